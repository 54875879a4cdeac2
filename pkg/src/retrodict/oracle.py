"""Independent reference computations used to cross-check the main estimators.

Nothing here shares numerical code with the estimators it validates.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import SingularPushforward


@dataclass(frozen=True)
class QuadratureGrid:
    npoints: int = 400
    margin: float = 1e-4

    def __post_init__(self):
        if self.npoints < 16:
            raise ValueError("npoints must be at least 16")
        if not 0.0 <= self.margin < 0.5:
            raise ValueError("margin must lie in [0, 0.5)")


def _bit_disagreement_grid(m, x):
    """Disagreement for every pair of bit priors ``(x_i, 1 - x_i)``, ``(x_j, 1 - x_j)``.

    Bayes inverses of bit maps have probability columns, so their difference
    is ``[[u, v], [-u, -v]]`` whose only singular value is ``sqrt(2 (u^2 + v^2))``.
    """
    m = np.asarray(m, dtype=float)
    prior = np.stack([x, 1.0 - x])
    out = m @ prior
    # top-row entries of the inverse: column a' holds m[a', 0] x / out[a']
    top = m[:, 0][:, None] * x[None, :] / out
    u = top[0][:, None] - top[0][None, :]
    v = top[1][:, None] - top[1][None, :]
    return np.sqrt(2.0 * (u * u + v * v))


def _check_outputs(m):
    # an output that is never produced has no Bayes inverse column at any prior
    if np.any(m.sum(axis=1) <= 0.0):
        raise SingularPushforward(f"map {m.tolist()} never produces some output")


def _nodes(grid):
    """Quadrature nodes clustered at both ends of ``(margin, 1 - margin)`` and their weights.

    Pushforward entries are linear in the prior, so the integrands only vary
    sharply next to the ends; ``x = a + (b - a)(1 - cos(pi t)) / 2`` resolves
    those layers, and the trapezoid rule is applied in ``t``.
    """
    lo, hi = grid.margin, 1.0 - grid.margin
    t = np.linspace(0.0, 1.0, grid.npoints)
    x = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * t))
    w = np.full(grid.npoints, t[1])
    w[[0, -1]] *= 0.5
    # Jacobian dx/dt, normalized so the weights integrate to one over the x range
    w *= 0.5 * np.pi * np.sin(np.pi * t)
    return x, w


def _trapezoid2(values, w):
    return float(w @ values @ w)


def quadrature_bit_subjectivity(m, grid=None, normalize=True):
    """Subjectivity of a bit map by a 2-D trapezoid rule over pairs of priors.

    Priors range over ``(margin, 1 - margin)`` on the first coordinate. With
    ``normalize=True`` the result is divided by the same quadrature of the
    uniform erasure.
    """
    grid = grid or QuadratureGrid()
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise ValueError("quadrature is implemented for bit maps only")
    _check_outputs(m)
    x, w = _nodes(grid)
    raw = _trapezoid2(_bit_disagreement_grid(m, x), w)
    if not normalize:
        return raw
    ref = _trapezoid2(_bit_disagreement_grid(np.full((2, 2), 0.5), x), w)
    return raw / ref


def quadrature_bit_divchange(m, grid=None):
    """Raw average change in KL divergence of a bit map by a 2-D trapezoid rule."""
    grid = grid or QuadratureGrid()
    m = np.asarray(m, dtype=float)
    _check_outputs(m)
    x, w = _nodes(grid)
    p = np.stack([x, 1.0 - x])
    mp_ = m @ p

    def kl(a, b):
        # a indexed by the first grid axis, b by the second
        return sum(a[k][:, None] * np.log(a[k][:, None] / b[k][None, :]) for k in range(2))

    return _trapezoid2(kl(p, p) - kl(mp_, mp_), w)


def brute_diamond_lower(a, b, nsamples=2000, rng=None, batch=512):
    """Best output trace norm over random pure system-ancilla inputs; a lower bound on the diamond distance."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[1:] != b.shape[1:]:
        raise ValueError("channels act on different dimensions")
    rng = rng or np.random.default_rng(0)
    d = a.shape[1]
    best = 0.0
    done = 0
    while done < nsamples:
        n = min(batch, nsamples - done)
        psi = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
        psi /= np.linalg.norm(psi.reshape(n, -1), axis=1)[:, None, None]
        # psi[n, s, r]: system index s, ancilla index r
        out = np.zeros((n, d, d, d, d), dtype=complex)
        for kraus, sign in ((a, 1.0), (b, -1.0)):
            for k in kraus:
                phi = np.einsum("ij,njr->nir", k, psi)
                out += sign * np.einsum("nir,nje->nirje", phi, phi.conj())
        w = np.linalg.eigvalsh(out.reshape(n, d * d, d * d))
        best = max(best, float(np.abs(w).sum(axis=1).max()))
        done += n
    return best


def svd_reference(m, tol=1e-15, max_sweeps=60):
    """Singular values in descending order by one-sided Jacobi rotations, in pure Python."""
    rows = [list(map(float, r)) for r in np.atleast_2d(np.asarray(m, dtype=float))]
    nr, nc = len(rows), len(rows[0])
    if nr < nc:
        rows = [list(c) for c in zip(*rows)]
        nr, nc = nc, nr
    cols = [[rows[i][j] for i in range(nr)] for j in range(nc)]
    for _ in range(max_sweeps):
        rotated = False
        for p in range(nc - 1):
            for q in range(p + 1, nc):
                cp, cq = cols[p], cols[q]
                alpha = sum(v * v for v in cp)
                beta = sum(v * v for v in cq)
                gamma = sum(x * y for x, y in zip(cp, cq))
                if abs(gamma) <= tol * math.sqrt(alpha * beta) or gamma == 0.0:
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                cols[p] = [c * x - s * y for x, y in zip(cp, cq)]
                cols[q] = [s * x + c * y for x, y in zip(cp, cq)]
        if not rotated:
            break
    return sorted((math.sqrt(sum(v * v for v in col)) for col in cols), reverse=True)
