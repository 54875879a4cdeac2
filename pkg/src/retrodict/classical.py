"""Classical maps: probability vectors, column-stochastic matrices and Bayes inversion.

Matrices follow the column-stochastic convention ``M[a_out, a_in] = phi(a_out | a_in)``
and are stored as ordinary row-major numpy arrays.
"""

from dataclasses import dataclass
import itertools
import math

import numpy as np

from .errors import DimensionMismatch, InvalidState, NoConvergence, SingularPushforward, WrongDimension

ATOL = 1e-12
EPS = 1e-9
DET_TOL = 1e-9
RANK_TOL = 1e-9
CENTROID_TOL = 1e-12
MAX_PERIOD = 24
MAX_DOUBLINGS = 10_000


def as_prob_vector(p, atol=ATOL):
    """Validate ``p`` as a probability vector and return it as a float array."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidState(f"probability vector must be 1-D and nonempty, got shape {p.shape}")
    if np.any(p < -atol) or np.any(p > 1 + atol):
        raise InvalidState("probability entries must lie in [0, 1]")
    if abs(p.sum() - 1.0) > atol:
        raise InvalidState(f"probability vector sums to {p.sum()!r}, not 1")
    return p


def as_stochastic(m, atol=ATOL):
    """Validate ``m`` as a square column-stochastic matrix."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidState(f"stochastic matrix must be square, got shape {m.shape}")
    if np.any(m < -atol) or np.any(m > 1 + atol):
        raise InvalidState("stochastic matrix entries must lie in [0, 1]")
    colsum = m.sum(axis=0)
    if np.any(np.abs(colsum - 1.0) > atol):
        raise InvalidState(f"columns must sum to 1, got {colsum}")
    return m


def _check_dims(a, b):
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")


def apply(m, p):
    """Push the distribution ``p`` through the map ``m``."""
    m = as_stochastic(m)
    p = as_prob_vector(p)
    _check_dims(m, p)
    return m @ p


def compose(outer, inner):
    """Matrix of ``outer`` after ``inner``."""
    outer = as_stochastic(outer)
    inner = as_stochastic(inner)
    if outer.shape != inner.shape:
        raise DimensionMismatch(f"cannot compose {outer.shape} with {inner.shape}")
    return outer @ inner


def bayes_inverse(m, prior, eps=EPS):
    """Retrodiction map of ``m`` with respect to the reference ``prior``.

    Entry ``(a, a_out)`` of the result is ``m[a_out, a] * prior[a] / (m @ prior)[a_out]``.

    Raises
    ------
    SingularPushforward
        If some entry of ``m @ prior`` is at or below ``eps``.
    """
    m = as_stochastic(m)
    prior = as_prob_vector(prior)
    _check_dims(m, prior)
    out = m @ prior
    if np.any(out <= eps):
        raise SingularPushforward(f"pushforward {out} has an entry <= {eps}")
    return (m * prior[None, :]).T / out[None, :]


def abs_determinant(m):
    """|det m|, the fraction of simplex volume the map preserves."""
    m = as_stochastic(m)
    return float(min(1.0, abs(np.linalg.det(m))))


def spectral_norm_distance(a, b):
    """Largest singular value of ``a - b`` from the eigenvalues of (a-b)^T (a-b)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    diff = a - b
    lam = np.linalg.eigvalsh(diff.T @ diff)[-1]
    return float(math.sqrt(max(lam, 0.0)))


def _asymptotic_powers(m, tol=CENTROID_TOL, max_period=MAX_PERIOD, max_doublings=MAX_DOUBLINGS):
    """Return ``(A, period)`` where ``A = m**(2**k)`` has settled onto its cycle.

    ``A @ m**period`` equals ``A`` within ``tol`` in max-norm. The period is
    the smallest such value not above ``max_period``.
    """
    a = m.copy()
    for _ in range(max_doublings):
        power = a
        for r in range(1, max_period + 1):
            power = power @ m
            if np.max(np.abs(power - a)) < tol:
                return a, r
        a = a @ a
    raise NoConvergence("no fixed point or cycle found while iterating the map")


def _centroid_and_period(m):
    d = m.shape[0]
    if abs(abs(np.linalg.det(m)) - 1.0) < DET_TOL:
        # bijections leave the uniform vector fixed
        return np.full(d, 1.0 / d), 1, np.eye(d), np.eye(d)
    a, period = _asymptotic_powers(m)
    mean = np.zeros_like(a)
    power = a
    for _ in range(period):
        mean += power
        power = power @ m
    mean /= period
    return mean.mean(axis=1), period, a, mean


def fixed_centroid(m, with_period=False):
    """Centroid of the asymptotic image of ``m``, averaged over a cycle if the map oscillates.

    With ``with_period=True`` the cycle length is returned too; values above
    one flag non-stabilizing maps such as alternating absorbers.
    """
    m = as_stochastic(m)
    centroid, period, _, _ = _centroid_and_period(m)
    if with_period:
        return centroid, period
    return centroid


def centroid_distance(p):
    """Normalized distance of ``p`` from uniform, 1 for a pure vector."""
    p = np.asarray(p, dtype=float)
    d = p.size
    uniform = np.full(d, 1.0 / d)
    return float(np.linalg.norm(p - uniform) / math.sqrt((d - 1) / d))


def cfd(m):
    """Fixed centroid displacement in [0, 1]."""
    return min(1.0, centroid_distance(fixed_centroid(m)))


def relaxation_time(m, z):
    """Iterations until the absolute determinant falls to ``10**-z``.

    Returns ``math.inf`` for bijections and 1 for singular maps.
    """
    if z <= 0:
        raise ValueError("precision z must be positive")
    return _relaxation_from_det(abs_determinant(m), z)


def _relaxation_from_det(det, z):
    if det >= 1.0 - DET_TOL:
        return math.inf
    if det <= 0.0:
        return 1
    t = -z / math.log10(det)
    return max(1, math.ceil(t - 1e-9))


def skew(m):
    """Irregularity of the triangle spanned by the three columns of a trit map.

    0 for equilateral images, approaching 1 as an isosceles image flattens.
    Returns ``nan`` when two columns coincide and an angle has no meaning.
    """
    m = as_stochastic(m)
    if m.shape[0] != 3:
        raise WrongDimension(f"skew is defined for trit maps only, got d={m.shape[0]}")
    cols = [m[:, j] for j in range(3)]
    angles = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        k = 3 - i - j
        u = cols[i] - cols[k]
        v = cols[j] - cols[k]
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        if nu < 1e-12 or nv < 1e-12:
            return math.nan
        c = np.clip(u @ v / (nu * nv), -1.0, 1.0)
        angles.append(math.degrees(math.acos(c)))
    return max(max(angles) / 120.0, (60.0 - min(angles)) / 60.0) - 0.5


@dataclass(frozen=True)
class ChannelClass:
    """Classification tag; ``n`` is set for absorbers, ``fixed`` for erasures."""

    tag: str
    n: int = None
    fixed: tuple = None

    def __str__(self):
        if self.tag == "Absorbing":
            return f"Absorbing({self.n})"
        return self.tag


def _is_permutation(m, tol=EPS):
    near0 = np.abs(m) < tol
    near1 = np.abs(m - 1) < tol
    if not np.all(near0 | near1):
        return False
    return bool(np.all(near1.sum(axis=0) == 1) and np.all(near1.sum(axis=1) == 1))


_SPIRAL_ZEROS = ((0, 0), (0, 1), (1, 1), (2, 0))
_SPIRAL_ONES = ((1, 0), (2, 1))


def _is_spiral(m, tol=EPS):
    if m.shape != (3, 3):
        return False
    for perm in itertools.permutations(range(3)):
        p = list(perm)
        core = m[np.ix_(p, p)]
        if (all(abs(core[i, j]) < tol for i, j in _SPIRAL_ZEROS)
                and all(abs(core[i, j] - 1) < tol for i, j in _SPIRAL_ONES)
                and core[0, 2] > tol):
            return True
    return False


def classify(m):
    """Tag ``m`` as Bijection, Erasure, PseudoAbsorbing, Absorbing(n) or Generic.

    Absorbing(n) requires the asymptotic map to have rank ``n < d``, at least
    one deterministic transition, and the recurrent states to be permuted
    deterministically among themselves.
    """
    m = as_stochastic(m)
    d = m.shape[0]
    if _is_permutation(m):
        return ChannelClass("Bijection")
    if np.max(np.abs(m - m[:, :1])) < EPS:
        return ChannelClass("Erasure", fixed=tuple(m[:, 0]))
    if _is_spiral(m):
        return ChannelClass("PseudoAbsorbing")
    if np.any(np.abs(m - 1) < EPS):
        _, _, limit, mean = _centroid_and_period(m)
        rank = int(np.sum(np.linalg.svd(limit, compute_uv=False) > RANK_TOL))
        recurrent = np.flatnonzero(mean.max(axis=1) > RANK_TOL)
        if rank == recurrent.size < d and _is_permutation(m[np.ix_(recurrent, recurrent)]):
            return ChannelClass("Absorbing", n=rank)
    return ChannelClass("Generic")
