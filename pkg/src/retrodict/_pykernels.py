"""Vectorized numpy versions of the Monte Carlo integrands."""

import numpy as np


def disagreement_batch(m, g1, g2):
    """Spectral-norm distance between the Bayes inverses of ``m`` at each prior pair.

    ``g1`` and ``g2`` hold one prior per row; the pushforwards must be positive.
    """
    m = np.ascontiguousarray(m, dtype=float)
    g1 = np.ascontiguousarray(g1, dtype=float)
    g2 = np.ascontiguousarray(g2, dtype=float)
    o1 = g1 @ m.T
    o2 = g2 @ m.T
    # inv[n, a, a_out] = m[a_out, a] g[n, a] / o[n, a_out]
    inv1 = m.T[None] * g1[:, :, None] / o1[:, None, :]
    inv2 = m.T[None] * g2[:, :, None] / o2[:, None, :]
    diff = inv1 - inv2
    gram = np.einsum("nij,nik->njk", diff, diff)
    lam = np.linalg.eigvalsh(gram)[:, -1]
    return np.sqrt(np.maximum(lam, 0.0))


def divergence_change_batch(m, p, g):
    """``KL(p||g) - KL(m p || m g)`` per row, with ``0 log 0 = 0``."""
    m = np.ascontiguousarray(m, dtype=float)
    p = np.ascontiguousarray(p, dtype=float)
    g = np.ascontiguousarray(g, dtype=float)
    return _kl_rows(p, g) - _kl_rows(p @ m.T, g @ m.T)


def _kl_rows(p, q):
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log(p / q), 0.0)
    return terms.sum(axis=1)
