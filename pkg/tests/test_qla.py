import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cicap import qla
from cicap.exceptions import DimensionError
from cicap.states import max_entangled_projector, random_density

from conftest import random_hermitian


def reconstruction(dec):
    v, w = dec.eigenvectors, dec.eigenvalues
    return v @ np.diag(w) @ v.conj().T


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_herm_eig_trivial(method):
    dec = qla.herm_eig(np.eye(2), method=method)
    np.testing.assert_allclose(dec.eigenvalues, [1, 1])
    dec = qla.herm_eig(np.diag([0.75, 0.25]), method=method)
    np.testing.assert_allclose(dec.eigenvalues, [0.25, 0.75])


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
@pytest.mark.parametrize("d", [1, 2, 3, 8, 17, 64])
def test_herm_eig_reconstruction(method, d, rng):
    m = random_hermitian(rng, d)
    dec = qla.herm_eig(m, method=method)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    assert np.linalg.norm(reconstruction(dec) - m) <= 1e-10 * max(1, np.linalg.norm(m))
    v = dec.eigenvectors
    assert np.linalg.norm(v.conj().T @ v - np.eye(d)) <= 1e-10


def test_jacobi_agrees_with_lapack(rng):
    for d in (4, 9, 16):
        m = random_hermitian(rng, d)
        np.testing.assert_allclose(qla.jacobi_eigh(m).eigenvalues, np.linalg.eigvalsh(m), atol=1e-10)


def test_jacobi_degenerate_spectrum():
    p = max_entangled_projector(3)
    dec = qla.jacobi_eigh(p)
    np.testing.assert_allclose(dec.eigenvalues, [0] * 8 + [1], atol=1e-12)


def test_herm_eig_errors():
    with pytest.raises(DimensionError):
        qla.herm_eig(np.ones((2, 3)))
    with pytest.raises(ValueError, match="not Hermitian"):
        qla.herm_eig(np.array([[0, 1], [0, 0]]))


def test_tensor():
    np.testing.assert_array_equal(qla.tensor(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(qla.tensor(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))


def test_tensor_trace_multiplicative(rng):
    for _ in range(10):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert np.trace(qla.tensor(a, b)) == pytest.approx(np.trace(a) * np.trace(b), abs=1e-12)


def test_partial_trace_examples():
    red = qla.partial_trace(max_entangled_projector(2), (2, 2), keep="B")
    np.testing.assert_allclose(red, np.eye(2) / 2, atol=1e-15)
    rho = random_density(3, 1).matrix
    sigma = random_density(2, 2).matrix * 2.5
    np.testing.assert_allclose(qla.partial_trace(np.kron(rho, sigma), (3, 2), "A"), rho * 2.5, atol=1e-12)
    np.testing.assert_allclose(qla.partial_trace(np.kron(rho, sigma), (3, 2), "B"), sigma, atol=1e-12)


def test_partial_trace_errors():
    with pytest.raises(DimensionError):
        qla.partial_trace(np.eye(4), (2, 3))
    with pytest.raises(ValueError):
        qla.partial_trace(np.eye(4), (2, 2), keep="C")


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2), (2, 3), (3, 2), (1, 4)]))
def test_partial_trace_preserves_trace(seed, dims):
    m = random_hermitian(np.random.default_rng(seed), dims[0] * dims[1])
    for keep in "AB":
        assert np.trace(qla.partial_trace(m, dims, keep)) == pytest.approx(np.trace(m), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_tensor_partial_trace_round_trip(seed):
    rho = random_density(3, seed).matrix
    sigma = random_density(4, seed + 1).matrix
    np.testing.assert_allclose(qla.partial_trace(qla.tensor(rho, sigma), (3, 4), "A"), rho, atol=1e-12)


def test_is_psd():
    assert qla.is_psd(np.eye(2))
    assert not qla.is_psd(np.diag([1, -0.5]), 1e-9)
    op = np.kron(np.eye(2) / 2, np.eye(2)) - max_entangled_projector(2)
    assert not qla.is_psd(op, 1e-9)
    assert qla.min_eigenvalue(op) == pytest.approx(-0.5, abs=1e-12)
    with pytest.raises(ValueError):
        qla.is_psd(np.array([[0, 1], [0, 0]]))


def test_trace_distance(rng):
    rho = random_density(3, 0)
    assert qla.trace_distance(rho, rho) == 0
    assert qla.trace_distance(np.diag([1, 0]), np.diag([0, 1])) == pytest.approx(1)
    for s in range(10):
        a, b = random_density(4, s), random_density(4, s + 100)
        dab = qla.trace_distance(a, b)
        assert dab == pytest.approx(qla.trace_distance(b, a), abs=1e-14)
        assert 0 <= dab <= 1
    with pytest.raises(DimensionError):
        qla.trace_distance(np.eye(2) / 2, np.eye(3) / 3)
