import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from retrodict import quantum, samplers
from retrodict.errors import DimensionMismatch, InvalidState, SingularPushforward

from strategies import channel_with_prior, gen, qubit_channel, seeds

X = np.array([[0, 1], [1, 0]], dtype=complex)


def amplitude_damping(s):
    return np.array([[[1, 0], [0, math.sqrt(1 - s)]], [[0, math.sqrt(s)], [0, 0]]], dtype=complex)


def gad_channel(gamma, p):
    dil = quantum.Dilation(samplers.ad_dilation(gamma), np.diag([p, 1 - p]).astype(complex))
    return quantum.dilation_to_kraus(dil)


def test_validation():
    with pytest.raises(InvalidState):
        quantum.as_density(np.diag([0.6, 0.6]))
    with pytest.raises(InvalidState):
        quantum.as_kraus(2 * np.eye(2)[None])
    with pytest.raises(DimensionMismatch):
        quantum.apply_channel(quantum.identity_channel(2), np.eye(3) / 3)


# ---------------------------------------------------------------------------
# apply, dilation, adjoint


def test_apply_identity_channel():
    rho = quantum.random_density(3, gen(0))
    np.testing.assert_allclose(quantum.apply_channel(quantum.identity_channel(3), rho), rho)


def test_swap_dilation_erases():
    g = gen(1)
    tau = quantum.random_density(2, g)
    kraus = quantum.dilation_to_kraus(quantum.Dilation(quantum.swap_unitary(2), tau))
    for _ in range(50):
        rho = quantum.random_density(2, g)
        np.testing.assert_allclose(quantum.apply_channel(kraus, rho), tau, atol=1e-12)


def test_amplitude_damping_on_excited_state():
    s = 0.3
    out = quantum.apply_channel(amplitude_damping(s), np.diag([0, 1]).astype(complex))
    np.testing.assert_allclose(out, np.diag([s, 1 - s]), atol=1e-15)


def test_dilation_identity_unitary():
    beta = quantum.random_density(2, gen(2))
    kraus = quantum.dilation_to_kraus(quantum.Dilation(np.eye(4, dtype=complex), beta))
    np.testing.assert_allclose(quantum.transfer_matrix(kraus), np.eye(4), atol=1e-12)


def test_dilation_amplitude_damping_kraus_pair():
    gamma = 0.35
    beta = np.diag([1.0, 0.0]).astype(complex)
    kraus = quantum.dilation_to_kraus(quantum.Dilation(samplers.ad_dilation(gamma), beta))
    expected = amplitude_damping(gamma)
    got = sorted(kraus, key=lambda k: abs(k[0, 0]), reverse=True)
    # Kraus operators are fixed up to sign by the ancilla basis
    for k, e in zip(got, expected):
        sign = np.sign(np.real(np.vdot(e, k)))
        np.testing.assert_allclose(sign * k, e, atol=1e-12)


def test_invalid_dilation():
    with pytest.raises(InvalidState):
        quantum.dilation_to_kraus(quantum.Dilation(np.ones((4, 4)), np.eye(2) / 2))


def test_adjoint_examples():
    g = gen(3)
    u = samplers.haar_unitary(2, g)
    x = quantum.random_density(2, g)
    np.testing.assert_allclose(quantum.adjoint_apply(quantum.unitary_channel(u), x), u.conj().T @ x @ u,
                               atol=1e-12)
    f = samplers.random_channel(3, g)
    np.testing.assert_allclose(quantum.adjoint_apply(f, np.eye(3)), np.eye(3), atol=1e-12)


@given(seeds, st.integers(2, 3))
def test_adjoint_duality(seed, d):
    g = gen(seed)
    f = samplers.random_channel(d, g)
    a = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    b = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    x, y = a + a.conj().T, b + b.conj().T
    lhs = np.trace(quantum.apply_channel(f, x) @ y)
    rhs = np.trace(x @ quantum.adjoint_apply(f, y))
    assert abs(lhs - rhs) < 1e-10


@given(channel_with_prior(dim=3))
def test_apply_preserves_trace_and_positivity(case):
    f, rho = case
    out = quantum.apply_channel(f, rho)
    assert abs(np.trace(out) - 1) < 1e-12
    assert np.linalg.eigvalsh(0.5 * (out + out.conj().T))[0] >= -1e-10


# ---------------------------------------------------------------------------
# Petz map


def test_petz_of_unitary_conjugates_back():
    g = gen(4)
    u = samplers.haar_unitary(2, g)
    prior = quantum.random_density(2, g, min_eig=1e-2)
    petz = quantum.petz_inverse(quantum.unitary_channel(u), prior)
    rho = quantum.random_density(2, g)
    np.testing.assert_allclose(quantum.apply_channel(petz, rho), u.conj().T @ rho @ u, atol=1e-10)


def test_petz_of_erasure_prepares_prior():
    g = gen(5)
    w = quantum.erasure_channel(quantum.random_density(2, g, min_eig=1e-2))
    prior = quantum.random_density(2, g, min_eig=1e-2)
    petz = quantum.petz_inverse(w, prior)
    for _ in range(5):
        np.testing.assert_allclose(quantum.apply_channel(petz, quantum.random_density(2, g)), prior, atol=1e-10)


def test_petz_amplitude_damping_matches_z_channel():
    s = 0.5
    for p in (0.2, 0.5, 0.8):
        petz = quantum.petz_inverse(amplitude_damping(s), np.diag([p, 1 - p]))
        for q in (0.1, 0.4, 0.9):
            out = quantum.apply_channel(petz, np.diag([q, 1 - q]))
            top = p * q / (p + (1 - p) * s)
            np.testing.assert_allclose(out, np.diag([top, 1 - top]), atol=1e-10)


def test_petz_singular_pushforward():
    w = quantum.erasure_channel(np.diag([1.0, 0.0]))
    with pytest.raises(SingularPushforward):
        quantum.petz_inverse(w, np.eye(2) / 2)


@given(channel_with_prior(dim=2))
def test_petz_recoverability(case):
    f, prior = case
    out = quantum.apply_channel(f, prior)
    if np.linalg.eigvalsh(out)[0] < 1e-6:
        return
    petz = quantum.petz_inverse(f, prior)
    np.testing.assert_allclose(quantum.apply_channel(petz, out), prior, atol=1e-9)


@settings(max_examples=50)
@given(seeds)
def test_petz_composability(seed):
    g = gen(seed)
    f = samplers.random_channel(2, g)
    h = samplers.random_channel(2, g)
    prior = quantum.random_density(2, g, min_eig=1e-2)
    mid = quantum.apply_channel(f, prior)
    if min(np.linalg.eigvalsh(mid)[0], np.linalg.eigvalsh(quantum.apply_channel(h, mid))[0]) < 1e-4:
        return
    lhs = quantum.petz_inverse(quantum.compose_channels(h, f), prior)
    rhs = quantum.compose_channels(quantum.petz_inverse(f, prior), quantum.petz_inverse(h, mid))
    np.testing.assert_allclose(quantum.transfer_matrix(lhs), quantum.transfer_matrix(rhs), atol=1e-8)


def test_petz_of_unitary_is_prior_independent():
    g = gen(6)
    u = quantum.unitary_channel(samplers.haar_unitary(2, g))
    ref = quantum.transfer_matrix(quantum.petz_inverse(u, np.eye(2) / 2))
    for _ in range(50):
        t = quantum.transfer_matrix(quantum.petz_inverse(u, quantum.random_density(2, g, min_eig=1e-3)))
        np.testing.assert_allclose(t, ref, atol=1e-10)


# ---------------------------------------------------------------------------
# transfer matrix, qad, qfd


def test_transfer_matrix_examples():
    np.testing.assert_allclose(quantum.transfer_matrix(quantum.identity_channel(3)), np.eye(9), atol=1e-12)
    f = samplers.random_channel(3, gen(7))
    t = quantum.transfer_matrix(f)
    np.testing.assert_allclose(t[-1], np.eye(9)[-1], atol=1e-12)
    w = quantum.erasure_channel(quantum.random_density(3, gen(8)))
    assert np.linalg.matrix_rank(quantum.transfer_matrix(w), tol=1e-9) == 1


def test_operator_basis_is_orthonormal():
    for d in (2, 3, 4):
        basis = quantum.operator_basis(d)
        gram = np.einsum("iab,jba->ij", basis, basis)
        np.testing.assert_allclose(gram, d * np.eye(d * d), atol=1e-12)
        np.testing.assert_allclose(basis, basis.conj().transpose(0, 2, 1))


@given(seeds, st.integers(2, 3))
def test_erasure_iff_rank_one_transfer(seed, d):
    g = gen(seed)
    w = quantum.erasure_channel(quantum.random_density(d, g))
    assert np.linalg.matrix_rank(quantum.transfer_matrix(w), tol=1e-9) == 1
    f = samplers.random_channel(d, g)
    assert np.linalg.matrix_rank(quantum.transfer_matrix(f), tol=1e-9) > 1


@given(seeds)
def test_rank_one_transfer_means_constant_output(seed):
    g = gen(seed)
    w = quantum.erasure_channel(quantum.random_density(2, g))
    t = quantum.transfer_matrix(w)
    assert np.linalg.matrix_rank(t, tol=1e-9) == 1
    outs = [quantum.apply_channel(w, quantum.random_density(2, g)) for _ in range(3)]
    np.testing.assert_allclose(outs[0], outs[1], atol=1e-12)
    np.testing.assert_allclose(outs[0], outs[2], atol=1e-12)


def test_qad_examples():
    u = quantum.unitary_channel(samplers.haar_unitary(2, gen(9)))
    assert quantum.qad(u) == pytest.approx(1.0, abs=1e-12)
    assert quantum.qad(quantum.erasure_channel(np.eye(2) / 2)) == pytest.approx(0.0, abs=1e-12)
    assert quantum.qad(gad_channel(0.5, 0.3)) == pytest.approx(0.25, abs=1e-12)


@given(seeds, st.integers(2, 3))
def test_qad_is_multiplicative(seed, d):
    g = gen(seed)
    f = samplers.random_channel(d, g)
    h = samplers.random_channel(d, g)
    assert quantum.qad(quantum.compose_channels(h, f)) == pytest.approx(quantum.qad(h) * quantum.qad(f), abs=1e-9)


def test_qfd_examples():
    u = quantum.unitary_channel(samplers.haar_unitary(2, gen(10)))
    assert quantum.qfd(u) == pytest.approx(0.0, abs=1e-12)
    assert quantum.qfd(gad_channel(1.0, 1.0)) == pytest.approx(1.0, abs=1e-12)
    for gamma, p in ((0.3, 0.9), (0.7, 0.2), (0.5, 0.5)):
        assert quantum.qfd(gad_channel(gamma, p)) == pytest.approx(abs(2 * p - 1), abs=1e-10)


def test_qfd_of_qutrit_pure_pump_is_one():
    # every basis state decays to |0>
    kraus = np.zeros((3, 3, 3), dtype=complex)
    for j in range(3):
        kraus[j, 0, j] = 1.0
    assert quantum.qfd(kraus) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# composition


def test_compose_examples():
    g = gen(11)
    f = samplers.random_channel(2, g)
    np.testing.assert_allclose(quantum.transfer_matrix(quantum.compose_channels(f, quantum.identity_channel(2))),
                               quantum.transfer_matrix(f), atol=1e-12)
    a, b = samplers.haar_unitary(2, g), samplers.haar_unitary(2, g)
    np.testing.assert_allclose(quantum.compose_channels(quantum.unitary_channel(a), quantum.unitary_channel(b))[0],
                               a @ b, atol=1e-12)
    with pytest.raises(DimensionMismatch):
        quantum.compose_channels(quantum.identity_channel(2), quantum.identity_channel(3))


@given(seeds, st.integers(2, 3))
def test_transfer_matrix_is_multiplicative(seed, d):
    g = gen(seed)
    f = samplers.random_channel(d, g)
    h = samplers.random_channel(d, g)
    lhs = quantum.transfer_matrix(quantum.compose_channels(h, f))
    np.testing.assert_allclose(lhs, quantum.transfer_matrix(h) @ quantum.transfer_matrix(f), atol=1e-10)


def test_trace_norm_and_choi():
    assert quantum.trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2.0)
    choi = quantum.choi_matrix(quantum.identity_channel(2))
    omega = np.zeros(4)
    omega[[0, 3]] = 1.0
    np.testing.assert_allclose(choi, np.outer(omega, omega), atol=1e-15)
