"""Backend selection for the Monte Carlo integrands.

The compiled extension is used when it was built; otherwise the numpy
implementation. Setting ``RETRODICT_PURE_PYTHON=1`` forces the fallback.
Above ``COMPILED_MAX_DIM`` the batched LAPACK path is faster, so maps that
large always go to numpy.
"""

import os

from . import _pykernels

COMPILED_MAX_DIM = 4

_compiled = None
if not os.environ.get("RETRODICT_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _pick(m, name):
    if _compiled is not None and len(m) <= COMPILED_MAX_DIM:
        return getattr(_compiled, name)
    return getattr(_pykernels, name)


def disagreement_batch(m, g1, g2):
    """Spectral-norm distance between the Bayes inverses of ``m`` at each prior pair (rows)."""
    return _pick(m, "disagreement_batch")(m, g1, g2)


def divergence_change_batch(m, p, g):
    """``KL(p||g) - KL(m p||m g)`` for each row pair."""
    return _pick(m, "divergence_change_batch")(m, p, g)
