"""Quantum channels in Kraus and dilation form, transfer matrices and the Petz map.

A channel is an array of Kraus operators with shape ``(k, d, d)``. Dilations
order the tensor factors as system then ancilla.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from . import classical
from .errors import DimensionMismatch, InvalidState, SingularPushforward

ATOL = 1e-12
KRAUS_ATOL = 1e-10
EPS = 1e-9
POWER_FLOOR = 1e-12


def as_density(rho, atol=ATOL):
    """Validate a density operator: Hermitian, PSD within ``atol``, unit trace."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidState(f"density operator must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise InvalidState("density operator is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise InvalidState(f"density operator has trace {np.trace(rho)!r}")
    if np.linalg.eigvalsh(rho)[0] < -atol:
        raise InvalidState("density operator has a negative eigenvalue")
    return rho


def as_kraus(kraus, atol=KRAUS_ATOL):
    """Validate a Kraus set and return it as a ``(k, d, d)`` complex array."""
    kraus = np.asarray(kraus, dtype=complex)
    if kraus.ndim == 2:
        kraus = kraus[None]
    if kraus.ndim != 3 or kraus.shape[1] != kraus.shape[2]:
        raise InvalidState(f"Kraus operators must have shape (k, d, d), got {kraus.shape}")
    d = kraus.shape[1]
    completeness = np.einsum("kji,kjl->il", kraus.conj(), kraus)
    if np.max(np.abs(completeness - np.eye(d))) > atol:
        raise InvalidState("Kraus operators are not trace preserving")
    return kraus


def _check_op(kraus, op):
    if op.shape != kraus.shape[1:]:
        raise DimensionMismatch(f"operator shape {op.shape} does not match channel dimension {kraus.shape[1]}")


def apply_channel(kraus, rho):
    """Output ``sum_i K_i rho K_i^dagger``."""
    kraus = as_kraus(kraus)
    rho = np.asarray(rho, dtype=complex)
    _check_op(kraus, rho)
    return np.einsum("kij,jl,kml->im", kraus, rho, kraus.conj())


def adjoint_apply(kraus, op):
    """Heisenberg-picture action ``sum_i K_i^dagger X K_i``."""
    kraus = as_kraus(kraus)
    op = np.asarray(op, dtype=complex)
    _check_op(kraus, op)
    return np.einsum("kji,jl,klm->im", kraus.conj(), op, kraus)


def compose_channels(outer, inner):
    """Kraus set ``{g_j f_i}`` of ``outer`` after ``inner``."""
    outer = as_kraus(outer)
    inner = as_kraus(inner)
    if outer.shape[1] != inner.shape[1]:
        raise DimensionMismatch("channels act on different dimensions")
    d = outer.shape[1]
    return np.einsum("aij,bjk->abik", outer, inner).reshape(-1, d, d)


def hermitian_power(x, power, floor=POWER_FLOOR):
    """``x**power`` for Hermitian ``x`` with eigenvalues clamped to ``[floor, inf)``."""
    w, v = np.linalg.eigh(x)
    w = np.maximum(w, floor)
    return (v * w**power) @ v.conj().T


def petz_inverse(kraus, prior, eps=EPS):
    """Kraus set ``{sqrt(prior) K_i^dagger F[prior]^(-1/2)}`` of the Petz recovery map.

    Raises
    ------
    SingularPushforward
        When the smallest eigenvalue of ``F[prior]`` is at or below ``eps``.
    """
    kraus = as_kraus(kraus)
    prior = np.asarray(prior, dtype=complex)
    _check_op(kraus, prior)
    out = apply_channel(kraus, prior)
    out = 0.5 * (out + out.conj().T)
    if np.linalg.eigvalsh(out)[0] <= eps:
        raise SingularPushforward("pushforward of the prior is singular")
    root_prior = hermitian_power(0.5 * (prior + prior.conj().T), 0.5, floor=0.0)
    inv_root_out = hermitian_power(out, -0.5)
    return np.einsum("ij,kmj,ml->kil", root_prior, kraus.conj(), inv_root_out)


def unitary_channel(u):
    u = np.asarray(u, dtype=complex)
    return u[None]


def identity_channel(d):
    return np.eye(d, dtype=complex)[None]


def swap_unitary(d):
    """Swap on ``C^d (x) C^d``."""
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[j * d + i, i * d + j] = 1.0
    return swap


def erasure_channel(tau):
    """Kraus set of the channel that discards its input and prepares ``tau``."""
    tau = np.asarray(tau, dtype=complex)
    d = tau.shape[0]
    return dilation_to_kraus(Dilation(swap_unitary(d), tau))


@dataclass(frozen=True)
class Dilation:
    """System-ancilla unitary ``U`` with ancilla state ``beta``."""

    U: np.ndarray
    beta: np.ndarray

    @property
    def dim(self):
        return self.U.shape[0] // self.beta.shape[0]

    @property
    def ancilla_dim(self):
        return self.beta.shape[0]


def dilation_to_kraus(dil, atol=KRAUS_ATOL):
    """Kraus operators ``sqrt(l_k) <e_j| U |b_k>`` of ``Tr_B[U (rho (x) beta) U^dagger]``."""
    u = np.asarray(dil.U, dtype=complex)
    beta = np.asarray(dil.beta, dtype=complex)
    db = beta.shape[0]
    if u.shape[0] != u.shape[1] or u.shape[0] % db:
        raise InvalidState(f"dilation unitary shape {u.shape} incompatible with ancilla dim {db}")
    if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > atol:
        raise InvalidState("dilation matrix is not unitary")
    beta = as_density(beta, atol=1e-10)
    d = u.shape[0] // db
    lam, vecs = np.linalg.eigh(beta)
    lam = np.maximum(lam, 0.0)
    # u4[s_out, e, s_in, b]
    u4 = u.reshape(d, db, d, db)
    kraus = []
    for k in range(db):
        if lam[k] <= 0.0:
            continue
        block = np.einsum("aecb,b->eac", u4, vecs[:, k])
        kraus.extend(math.sqrt(lam[k]) * block)
    return as_kraus(np.array(kraus), atol=atol)


@lru_cache(maxsize=None)
def operator_basis(d):
    """Hermitian basis with ``Tr[P_i P_j] = d delta_ij``; the identity comes last.

    Pauli matrices for ``d = 2``, rescaled generalized Gell-Mann matrices otherwise.
    """
    mats = []
    if d == 2:
        mats = [np.array([[0, 1], [1, 0]], dtype=complex),
                np.array([[0, -1j], [1j, 0]], dtype=complex),
                np.array([[1, 0], [0, -1]], dtype=complex)]
    else:
        scale = math.sqrt(d / 2.0)
        for j in range(d):
            for k in range(j + 1, d):
                sym = np.zeros((d, d), dtype=complex)
                sym[j, k] = sym[k, j] = 1.0
                anti = np.zeros((d, d), dtype=complex)
                anti[j, k] = -1j
                anti[k, j] = 1j
                mats += [scale * sym, scale * anti]
        for l in range(1, d):
            diag = np.zeros(d)
            diag[:l] = 1.0
            diag[l] = -l
            mats.append(scale * math.sqrt(2.0 / (l * (l + 1))) * np.diag(diag).astype(complex))
    mats.append(np.eye(d, dtype=complex))
    basis = np.array(mats)
    basis.setflags(write=False)
    return basis


def bloch_vector(rho):
    """Coordinates ``Tr[P_i rho]`` for the traceless basis elements."""
    rho = np.asarray(rho, dtype=complex)
    basis = operator_basis(rho.shape[0])[:-1]
    return np.real(np.einsum("kij,ji->k", basis, rho))


def transfer_matrix(kraus):
    """Real ``d^2 x d^2`` matrix ``(1/d) Tr[P_i F[P_j]]`` in the fixed Hermitian basis."""
    kraus = as_kraus(kraus)
    d = kraus.shape[1]
    basis = operator_basis(d)
    images = np.einsum("kab,jbc,kdc->jad", kraus, basis, kraus.conj())
    t = np.real(np.einsum("iab,jba->ij", basis, images)) / d
    t[-1, :] = 0.0
    t[-1, -1] = 1.0
    return t


def qad(kraus):
    """Absolute determinant of the transfer matrix, 1 exactly for unitaries."""
    return float(min(1.0, abs(np.linalg.det(transfer_matrix(kraus)))))


def fixed_bloch_vector(kraus, with_period=False):
    """Bloch vector of the iterated channel's image of the maximally mixed state."""
    t = transfer_matrix(kraus)
    n = t.shape[0]
    if abs(abs(np.linalg.det(t)) - 1.0) < classical.DET_TOL:
        vec, period = np.zeros(n - 1), 1
    else:
        a, period = classical._asymptotic_powers(t)
        acc = np.zeros(n)
        power = a
        for _ in range(period):
            acc += power[:, -1]
            power = power @ t
        vec = acc[:-1] / period
    if with_period:
        return vec, period
    return vec


def qfd(kraus):
    """Fixed centroid displacement in [0, 1]; 1 when the channel pumps to a pure state."""
    vec = fixed_bloch_vector(kraus)
    d = math.isqrt(vec.size + 1)
    return float(min(1.0, np.linalg.norm(vec) / math.sqrt(d - 1)))


def choi_matrix(kraus):
    """``sum_ij F(|i><j|) (x) |i><j|`` with system first, reference second."""
    kraus = np.asarray(kraus, dtype=complex)
    d = kraus.shape[1]
    # j4[s, a, t, c] = F(|a><c|)[s, t]
    j4 = np.einsum("ksa,ktc->satc", kraus, kraus.conj())
    return j4.reshape(d * d, d * d)


def trace_norm(x):
    return float(np.sum(np.abs(np.linalg.eigvalsh(x))))


def random_density(d, rng, min_eig=0.0):
    """Hilbert-Schmidt random density matrix, resampled while its smallest eigenvalue is below ``min_eig``."""
    while True:
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        rho = 0.5 * (rho + rho.conj().T)
        if min_eig <= 0.0 or np.linalg.eigvalsh(rho)[0] >= min_eig:
            return rho
