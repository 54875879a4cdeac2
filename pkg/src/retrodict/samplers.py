"""Random states and channels, the qubit grid sampler, and special trit map families."""

from dataclasses import dataclass
import math

import numpy as np

from . import classical, quantum, rng as rng_mod
from .errors import InvalidBlocks

SANDWICH_PROB = 0.8
MAX_RETRIES = 64


def sample_simplex(dim, rng):
    """Uniform (flat Dirichlet) point of the probability simplex."""
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    return rng.dirichlet(np.ones(dim))


def haar_unitary(dim, rng):
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases[None, :]


def random_stochastic(dim, rng):
    """Column-stochastic matrix with independent flat-Dirichlet columns."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return rng.dirichlet(np.ones(dim), size=dim).T


def random_channel(dim, rng, ancilla_dim=None):
    """Channel from a Haar unitary dilation with a Hilbert-Schmidt random ancilla state."""
    db = ancilla_dim or dim
    beta = quantum.random_density(db, rng)
    u = haar_unitary(dim * db, rng)
    return quantum.dilation_to_kraus(quantum.Dilation(u, beta))


# ---------------------------------------------------------------------------
# qubit grid sampler


@dataclass(frozen=True)
class GridCell:
    """Target cell ``[u_lo, u_hi) x [f_lo, f_hi)`` in (|det T|, fixed-point norm) coordinates."""

    u_lo: float
    u_hi: float
    f_lo: float
    f_hi: float
    quota: int = 1
    index: tuple = (0, 0)

    def __post_init__(self):
        if not (0.0 <= self.u_lo < self.u_hi <= 1.0 and 0.0 <= self.f_lo < self.f_hi <= 1.0):
            raise ValueError(f"cell intervals must be nonempty subsets of [0, 1]: {self}")
        if self.quota < 1:
            raise ValueError("quota must be positive")

    def contains(self, u, f):
        return self.u_lo <= u < self.u_hi and self.f_lo <= f < self.f_hi


def grid_cells(nu, nf=None, quota=1):
    """Cells of a regular ``nu x nf`` grid over the unit square."""
    nf = nf or nu
    return [GridCell(i / nu, (i + 1) / nu, j / nf, (j + 1) / nf, quota, (i, j))
            for i in range(nu) for j in range(nf)]


@dataclass(frozen=True)
class SampledQubitChannel:
    dilation: quantum.Dilation
    coords: tuple
    cell: tuple
    retries: int
    sandwiched: bool
    gamma: float
    p: float

    def kraus(self):
        return quantum.dilation_to_kraus(self.dilation)


def ad_dilation(gamma):
    """Two-qubit amplitude-damping dilation, system first."""
    c, s = math.sqrt(1.0 - gamma), math.sqrt(gamma)
    return np.array([[1, 0, 0, 0],
                     [0, c, s, 0],
                     [0, -s, c, 0],
                     [0, 0, 0, 1]], dtype=complex)


def _bloch_rotation(u):
    return quantum.transfer_matrix(quantum.unitary_channel(u))[:3, :3]


def affine_coords(t_block, t_vec):
    """``(|det T|, ||(I - T)^-1 t||)``, or ``None`` when ``I - T`` is singular."""
    lhs = np.eye(3) - t_block
    if abs(np.linalg.det(lhs)) < 1e-12:
        return None
    return abs(np.linalg.det(t_block)), float(np.linalg.norm(np.linalg.solve(lhs, t_vec)))


def sample_qubit_gad_grid(cell, rng, sandwich_prob=SANDWICH_PROB, max_retries=MAX_RETRIES):
    """Draw a qubit channel whose (|det T|, fixed-point norm) falls in ``cell``.

    A generalized amplitude-damping channel with ``gamma = 1 - sqrt(u)`` and
    ``p = (1 +- f) / 2`` lands in the cell by construction. With probability
    ``sandwich_prob`` the dilation is wrapped in random local unitaries, which
    keeps the determinant and moves the fixed point; sandwiches are redrawn up
    to ``max_retries`` times until the fixed-point norm stays in the cell,
    otherwise the bare channel is returned.
    """
    u = rng.uniform(cell.u_lo, cell.u_hi)
    f = rng.uniform(cell.f_lo, cell.f_hi)
    gamma = 1.0 - math.sqrt(u)
    p = (1.0 + f) / 2.0 if rng.random() < 0.5 else (1.0 - f) / 2.0
    beta = np.diag([p, 1.0 - p]).astype(complex)
    u_ad = ad_dilation(gamma)
    t_gad = np.diag([math.sqrt(1 - gamma), math.sqrt(1 - gamma), 1 - gamma])
    v_gad = np.array([0.0, 0.0, gamma * (2 * p - 1)])
    retries = 0
    if rng.random() < sandwich_prob:
        for retries in range(1, max_retries + 1):
            u1 = haar_unitary(2, rng)
            u2 = haar_unitary(2, rng)
            r1, r2 = _bloch_rotation(u1), _bloch_rotation(u2)
            coords = affine_coords(r1 @ t_gad @ r2, r1 @ v_gad)
            if coords is not None and cell.contains(*coords):
                full = np.kron(u1, np.eye(2)) @ u_ad @ np.kron(u2, np.eye(2))
                return SampledQubitChannel(quantum.Dilation(full, beta), coords, cell.index,
                                           retries, True, gamma, p)
    return SampledQubitChannel(quantum.Dilation(u_ad, beta), (u, f), cell.index,
                               retries, False, gamma, p)


def fill_grid(cells, seed):
    """Fill every cell's quota; sample ``k`` of cell ``c`` uses stream index ``c * 2**20 + k``."""
    out = []
    for c, cell in enumerate(cells):
        for k in range(cell.quota):
            gen = rng_mod.stream(seed, c * 2**20 + k, tag=rng_mod.CHANNEL)
            out.append(sample_qubit_gad_grid(cell, gen))
    return out


# ---------------------------------------------------------------------------
# trit channels


def sample_trit_channel_restricted(D, rng):
    """Trit map whose columns' first two entries are uniform on the triangle scaled by ``1 - D``.

    The parameter name follows the usual description as a determinant floor,
    but only the column entries are restricted; the determinant is not bounded.
    """
    if not 0.0 <= D <= 1.0:
        raise ValueError("D must lie in [0, 1]")
    pairs = rng.dirichlet(np.ones(3), size=3)[:, :2] * (1.0 - D)
    m = np.empty((3, 3))
    m[:2, :] = pairs.T
    m[2, :] = 1.0 - pairs.sum(axis=1)
    return np.clip(m, 0.0, 1.0)


def permutation_matrix(perm):
    """Matrix sending basis state ``j`` to ``perm[j]``; square 0/1 matrices pass through."""
    perm = np.asarray(perm)
    if perm.ndim == 2:
        if not classical._is_permutation(perm):
            raise InvalidBlocks("not a permutation matrix")
        return perm.astype(float)
    n = perm.size
    if sorted(perm.tolist()) != list(range(n)):
        raise InvalidBlocks(f"{perm.tolist()} is not a permutation of range({n})")
    out = np.zeros((n, n))
    out[perm, np.arange(n)] = 1.0
    return out


def construct_absorbing(d, n, R, Q, outer=None, inner=None, atol=1e-12):
    """Absorbing map ``P [[Phi_n, R], [0, Q]] P^T``.

    Parameters
    ----------
    d, n : int
        Total and absorbing-space dimension, ``1 <= n < d``.
    R : array_like, shape (n, d - n)
        Transitions from transient into absorbing states; needs a nonzero entry.
    Q : array_like, shape (d - n, d - n)
        Transient block with ``det(1 - Q) != 0``.
    outer, inner : permutation, optional
        ``P`` (size ``d``) relabels states, ``Phi_n`` (size ``n``) permutes the
        absorbing states. Either an index sequence or a permutation matrix.
    """
    if not 1 <= n < d:
        raise InvalidBlocks(f"need 1 <= n < d, got d={d}, n={n}")
    m = d - n
    R = np.asarray(R, dtype=float).reshape(n, m)
    Q = np.asarray(Q, dtype=float).reshape(m, m)
    if not np.any(np.abs(R) > atol):
        raise InvalidBlocks("transfer block R must have a nonzero entry")
    if abs(np.linalg.det(np.eye(m) - Q)) < atol:
        raise InvalidBlocks("1 - Q is singular")
    phi_n = permutation_matrix(range(n) if inner is None else inner)
    phi_d = permutation_matrix(range(d) if outer is None else outer)
    if phi_n.shape != (n, n) or phi_d.shape != (d, d):
        raise InvalidBlocks("permutation sizes do not match the blocks")
    block = np.zeros((d, d))
    block[:n, :n] = phi_n
    block[:n, n:] = R
    block[n:, n:] = Q
    if np.any(block < -atol) or np.any(np.abs(block.sum(axis=0) - 1.0) > 1e-10):
        raise InvalidBlocks("assembled matrix is not column-stochastic")
    return phi_d @ block @ phi_d.T


def alternating_absorber(p, q, outer=None):
    """Trit absorber whose two absorbing states swap at every step."""
    return construct_absorbing(3, 2, [p, q], [1.0 - p - q], outer, [1, 0])


def unbiased_absorber(p, outer=None):
    """Trit absorber that leaks its transient state equally into both absorbing states."""
    if not 0.0 < p <= 0.5:
        raise InvalidBlocks("p must lie in (0, 1/2]")
    return construct_absorbing(3, 2, [p, p], [1.0 - 2 * p], outer)


def construct_spiral(p, q, outer=None):
    """Pseudo-absorbing trit map ``P [[0, 0, p], [1, 0, q], [0, 1, 1-p-q]] P^T``."""
    if not (0.0 < p <= 1.0 - q and 0.0 <= q <= 1.0 - p):
        raise ValueError(f"spiral parameters out of range: p={p}, q={q}")
    core = np.array([[0.0, 0.0, p],
                     [1.0, 0.0, q],
                     [0.0, 1.0, 1.0 - p - q]])
    phi = permutation_matrix(range(3) if outer is None else outer)
    return phi @ core @ phi.T


def random_permutation(d, rng):
    return rng.permutation(d)
