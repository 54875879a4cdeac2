import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from retrodict import bit_analytic, classical, oracle
from retrodict.errors import DomainError

unit = st.floats(min_value=0.0, max_value=1.0)
interior = st.floats(min_value=1e-3, max_value=1.0 - 1e-3)


def f_sub_direct(z):
    w = z**-2 - 1
    return w * (1 - w * math.atanh(z) ** 2)


def f_div_direct(z):
    return (z**-2 - 1) * math.atanh(z)


def test_bijection_limit():
    for F in (0.0, 0.3, 1.0):
        assert bit_analytic.bit_subjectivity_analytic(1.0, F) == 0.0
        assert bit_analytic.bit_divchange_analytic(1.0, F) == 0.0


def test_limits_near_one_vanish():
    for F in (0.0, 0.5, 1.0):
        assert bit_analytic.bit_subjectivity_analytic(1 - 1e-10, F) < 1e-8
        assert bit_analytic.bit_divchange_analytic(1 - 1e-10, F) < 1e-8


def test_erasure_values():
    for F in (0.0, 0.4, 1.0):
        assert bit_analytic.bit_subjectivity_analytic(0.0, F) == pytest.approx(2 / 3)
        assert bit_analytic.bit_divchange_analytic(0.0, F) == pytest.approx(0.5)


@given(interior)
def test_symmetric_collapse_at_zero_cfd(D):
    assert bit_analytic.bit_subjectivity_analytic(D, 0.0) == pytest.approx(2 * f_sub_direct(D), rel=1e-9, abs=1e-12)
    assert bit_analytic.bit_divchange_analytic(D, 0.0) == pytest.approx(D / 2 * f_div_direct(D), rel=1e-9)


@given(interior, interior)
def test_matches_direct_formula(D, F):
    zp, zm = D / (1 + F * (1 - D)), D / (1 - F * (1 - D))
    assert bit_analytic.bit_arguments(D, F) == pytest.approx((zp, zm), rel=1e-12)
    if max(zp, zm) < 1 - 1e-6:
        expected = f_sub_direct(zp) + f_sub_direct(zm)
        assert bit_analytic.bit_subjectivity_analytic(D, F) == pytest.approx(expected, rel=1e-7, abs=1e-10)
        expected = D / 4 * (f_div_direct(zp) + f_div_direct(zm))
        assert bit_analytic.bit_divchange_analytic(D, F) == pytest.approx(expected, rel=1e-9)


def test_branches_are_continuous():
    f = bit_analytic._f_subjectivity
    for z in (bit_analytic.Z_SMALL, bit_analytic.Z_SERIES):
        below, above = np.nextafter(z, 0.0), np.nextafter(z, 1.0)
        assert f(below) == pytest.approx(f(above), abs=1e-14)
    # leading terms 1/3 - 8 z^2 / 45
    assert f(1e-4) == pytest.approx(1 / 3 - 8e-8 / 45, abs=1e-15)
    assert f(0.5) == pytest.approx(f_sub_direct(0.5), abs=1e-13)


def test_domain_errors():
    with pytest.raises(DomainError):
        bit_analytic.bit_subjectivity_analytic(1.2, 0.5)
    with pytest.raises(DomainError):
        bit_analytic.bit_divchange_analytic(0.5, -0.1)
    with pytest.raises(DomainError):
        bit_analytic.bit_coords([[0.2, 0.9], [0.8, 0.1]])


def test_monotone_on_grid():
    g = np.linspace(0.0, 1.0, 64)
    s = np.array([[bit_analytic.bit_subjectivity_analytic(D, F) for F in g] for D in g])
    d = np.array([[bit_analytic.bit_divchange_analytic(D, F) for F in g] for D in g])
    for values in (s, d):
        assert np.diff(values, axis=0).max() <= 1e-12
        assert np.diff(values, axis=1).max() <= 1e-12


def test_orientation_agrees_with_quadrature():
    along_d = [oracle.quadrature_bit_subjectivity(bit_analytic.bit_channel_from_coords(D, 0.5), normalize=False)
               for D in (0.1, 0.4, 0.7, 0.95)]
    along_f = [oracle.quadrature_bit_subjectivity(bit_analytic.bit_channel_from_coords(0.4, F), normalize=False)
               for F in (0.0, 0.4, 0.8)]
    assert np.all(np.diff(along_d) < 0) and np.all(np.diff(along_f) < 0)


@given(interior, st.floats(min_value=0.0, max_value=1.0 - 1e-3), st.booleans())
def test_coords_round_trip(D, F, flip):
    m = bit_analytic.bit_channel_from_coords(D, F, flip)
    assert classical.abs_determinant(m) == pytest.approx(D, abs=1e-12)
    assert classical.cfd(m) == pytest.approx(F, abs=1e-9)
    assert bit_analytic.bit_coords(m) == pytest.approx((D, F), abs=1e-12)


def test_divchange_matches_quadrature():
    for D, F in ((0.2, 0.1), (0.5, 0.5), (0.8, 0.3)):
        m = bit_analytic.bit_channel_from_coords(D, F)
        # the margin cuts off part of the logarithmic edge singularity
        assert bit_analytic.bit_divchange_analytic(D, F) == pytest.approx(oracle.quadrature_bit_divchange(m), abs=2e-3)
