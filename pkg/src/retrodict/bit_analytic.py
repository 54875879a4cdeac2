"""Closed forms of the bit-channel measures in terms of (|det|, fixed centroid distance).

``F`` here is the normalized fixed centroid distance returned by
:func:`retrodict.classical.cfd`. The closed forms are written for the raw
Euclidean distance ``F / sqrt(2)``, so the arguments are
``z = D / (1 +- F (1 - D))``. Values are the raw integrals over pairs of bit
priors (uniform on the segment), not erasure-normalized.
"""

import math

import numpy as np

from .errors import DomainError

Z_SERIES = 1.0 - 1e-6
Z_SMALL = 0.2
# Taylor coefficients of the subjectivity term in powers of z**2
_SMALL_COEFFS = (1.0 / 3.0, -8.0 / 45.0, -4.0 / 63.0, -16.0 / 525.0, -0.017162097162097163,
                 -0.01069491355205641, -0.007150521436235722, -0.005035155735435847,
                 -0.0036897276938556607, -0.0027906582442655246, -0.00216563906476901)


def _check(D, F):
    if not (0.0 <= D <= 1.0 and 0.0 <= F <= 1.0):
        raise DomainError(f"coordinates (D={D}, F={F}) must lie in [0, 1]^2")


def bit_arguments(D, F):
    """The two arguments ``z+`` and ``z-`` of the closed forms."""
    _check(D, F)
    if D == 0.0:
        # erasures; the F = 1 corner is 0 / 0 in the formula
        return 0.0, 0.0
    # sqrt(2) * (F / sqrt(2)) = F; the minus branch is regrouped to avoid cancellation near F = 1
    zs = []
    for den in (1.0 + F * (1.0 - D), (1.0 - F) + F * D):
        z = D / den
        if z < 0.0 or z > 1.0 + 1e-12:
            raise DomainError(f"argument z={z} outside [0, 1] for (D={D}, F={F})")
        zs.append(min(z, 1.0))
    return tuple(zs)


def _w(z):
    # z**-2 - 1 without cancellation near z = 1
    return (1.0 - z) * (1.0 + z) / (z * z)


def _atanh(z):
    return 0.5 * (math.log1p(z) - math.log1p(-z))


def _f_subjectivity(z):
    if z == 0.0:
        return 1.0 / 3.0
    if z >= 1.0:
        return 0.0
    if z < Z_SMALL:
        # the closed form cancels badly for small z
        return float(np.polynomial.polynomial.polyval(z * z, _SMALL_COEFFS))
    w = _w(z)
    # log form of atanh keeps accuracy as z -> 1, where w -> 0 and atanh diverges
    a = _atanh(z) if z > Z_SERIES else math.atanh(z)
    return w * (1.0 - w * a * a)


def _f_divergence(z):
    if z >= 1.0:
        return 0.0
    w = _w(z)
    a = _atanh(z) if z > Z_SERIES else math.atanh(z)
    return w * a


def bit_subjectivity_analytic(D, F):
    """Closed-form subjectivity of a bit channel with ``|det| = D`` and cfd ``F``.

    Equals 0 at ``D = 1`` and 2/3 at ``D = 0``.

    Raises
    ------
    DomainError
        When ``(D, F)`` lies outside the unit square.
    """
    zp, zm = bit_arguments(D, F)
    return _f_subjectivity(zp) + _f_subjectivity(zm)


def bit_divchange_analytic(D, F):
    """Closed-form average change in divergence (nats) of a bit channel.

    The ``D -> 0`` limit is 1/2, the value for an erasure.
    """
    zp, zm = bit_arguments(D, F)
    if D == 0.0:
        return 0.5
    return 0.25 * D * (_f_divergence(zp) + _f_divergence(zm))


def bit_channel_from_coords(D, F, flip=False):
    """Bit channel with nonnegative determinant ``D`` and normalized cfd ``F``.

    Off-diagonal entries are ``(1 - D)(1 -+ F) / 2``; ``flip`` swaps them,
    mirroring the fixed point about the uniform vector.
    """
    _check(D, F)
    a = 0.5 * (1.0 - D) * (1.0 - F)
    b = 0.5 * (1.0 - D) * (1.0 + F)
    if flip:
        a, b = b, a
    return np.array([[1.0 - a, b], [a, 1.0 - b]])


def bit_coords(m):
    """``(D, F)`` of a bit channel ``[[1-a, b], [a, 1-b]]`` with ``a + b <= 1``."""
    m = np.asarray(m, dtype=float)
    a, b = m[1, 0], m[0, 1]
    if a + b > 1.0 + 1e-12:
        raise DomainError("negative-determinant bit channels are not covered by the closed forms")
    s = a + b
    D = 1.0 - s
    F = abs(b - a) / s if s > 0 else 0.0
    return D, F
