import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dnchain.eigen import (
    Spectrum,
    backward_error,
    spectral_qpoly,
    sym_eigenvalues,
    tridiagonal_ql,
    tridiagonalize,
)
from dnchain.errors import InvalidParams, IterationLimit, NegativeEnergy, NonIntegerSpectrum
from dnchain.qpoly import QPolynomial


def _random_symmetric(n, seed):
    a = np.random.default_rng(seed).normal(size=(n, n))
    return a + a.T


@pytest.mark.parametrize("n", [1, 2, 3, 10, 40])
def test_eigenvalues_match_lapack(n):
    a = _random_symmetric(n, n)
    np.testing.assert_allclose(sym_eigenvalues(a).values, np.linalg.eigvalsh(a), atol=1e-10)


def test_tridiagonal_form_is_similar():
    a = _random_symmetric(7, 3)
    d, e, q = tridiagonalize(a, want_q=True)
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(q.T @ a @ q, t, atol=1e-12)
    np.testing.assert_allclose(q.T @ q, np.eye(7), atol=1e-13)


def test_eigenvectors_and_backward_error():
    a = _random_symmetric(12, 5)
    s = sym_eigenvalues(a, vectors=True)
    assert backward_error(a, s.values, s.vectors) < 1e-12 * np.linalg.norm(a, 2)
    np.testing.assert_allclose(s.vectors.T @ s.vectors, np.eye(12), atol=1e-12)


def test_degenerate_spectrum():
    q, _ = np.linalg.qr(np.random.default_rng(1).normal(size=(6, 6)))
    a = q @ np.diag([1, 1, 1, 2, 2, 5.0]) @ q.T
    np.testing.assert_allclose(sym_eigenvalues(a).values, [1, 1, 1, 2, 2, 5], atol=1e-12)


def test_sweep_limit():
    d = np.array([1.0, 2.0, 3.0, 4.0])
    e = np.array([1.0, 1.0, 1.0])
    with pytest.raises(IterationLimit):
        tridiagonal_ql(d, e, max_sweeps=0)


def test_input_validation():
    with pytest.raises(InvalidParams):
        sym_eigenvalues(np.zeros((2, 3)))
    assert sym_eigenvalues(np.zeros((0, 0))).dim == 0


def test_spectral_qpoly():
    spec = Spectrum(values=np.array([6.0, 6.0000000001, 7.0, 10.0]), dim=4)
    assert spectral_qpoly(spec) == QPolynomial({6: 2, 7: 1, 10: 1})


def test_spectral_qpoly_errors():
    with pytest.raises(NonIntegerSpectrum) as info:
        spectral_qpoly(Spectrum(values=np.array([1.0, 2.5]), dim=2))
    assert info.value.index == 1
    with pytest.raises(NegativeEnergy):
        spectral_qpoly(Spectrum(values=np.array([-1.0, 2.0]), dim=2))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 15), seed=st.integers(0, 2**32 - 1))
def test_trace_and_lapack_agreement(n, seed):
    a = _random_symmetric(n, seed)
    vals = sym_eigenvalues(a).values
    assert np.all(np.diff(vals) >= 0)
    assert vals.sum() == pytest.approx(np.trace(a), abs=1e-9 * max(1, np.abs(a).sum()))
    np.testing.assert_allclose(vals, np.linalg.eigvalsh(a), atol=1e-9)
