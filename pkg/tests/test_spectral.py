import pytest
import numpy as np
from scipy.linalg import LinAlgError, solve_banded

import betatrix.spectral as spectral
from betatrix.errors import DegenerateSpectrumError, ParameterError
from betatrix.matrices import BidiagonalPos, Spectrum, TridiagonalSym
from betatrix.sources.ensembles import HermiteParams, LaguerreParams, sample_hermite, sample_laguerre_factor
from betatrix.sources.streams import RandomStream
from betatrix.spectral import (
    char_poly,
    eigenvalues,
    first_row_eigvec,
    inverse_iteration,
    jacobian_b_to_t,
    jacobian_t_to_qlambda,
    laguerre_spectrum,
    reconstruct,
    spectrum,
    sturm_count,
    vandermonde_direct,
    vandermonde_tridiagonal,
)


def _hermite(beta, n, size, seed=0):
    return sample_hermite(HermiteParams(beta, n), RandomStream(seed), size=size)


def test_sturm_count():
    T = TridiagonalSym(np.zeros(2), np.ones(1))
    np.testing.assert_array_equal(sturm_count(T, [-2.0, 0.0, 2.0]), [0, 1, 2])


def test_char_poly_matches_determinants():
    T = _hermite(2.0, 5, None, seed=1)
    dense = T.to_dense()
    y = 0.37
    values = char_poly(T, y).as_array()
    expected = [1.0] + [np.linalg.det(y * np.eye(k) - dense[5 - k :, 5 - k :]) for k in range(1, 6)]
    np.testing.assert_allclose(values, expected, rtol=1e-10, atol=1e-12)


def test_char_poly_rescales_large_entries():
    T = _hermite(1.0, 40, None, seed=2)
    big = TridiagonalSym(T.diag * 1e60, T.subdiag * 1e60)
    P = char_poly(big, 0.0)
    assert np.all(np.isfinite(P.values))
    assert np.max(P.exponents) > 1023


@pytest.mark.parametrize(
    "beta, n",
    [
        (0.5, 2),
        (1.0, 6),
        (2.0, 20),
        (4.0, 50),
    ],
)
def test_eigenvalues_match_dense_solver(beta, n):
    T = _hermite(beta, n, 8, seed=n)
    expected = np.linalg.eigvalsh(T.to_dense())
    atol = 1e-12 * np.max(T.norm_bound())
    np.testing.assert_allclose(eigenvalues(T), expected, rtol=0, atol=atol)
    np.testing.assert_allclose(eigenvalues(T, method="lapack"), expected, rtol=0, atol=atol)


@pytest.mark.parametrize("tol, method", [(0.0, "bisection"), (1e-3, "bisection"), (1e-14, "qr")])
def test_eigenvalues_rejects_bad_arguments(tol, method):
    with pytest.raises(ParameterError):
        eigenvalues(_hermite(2.0, 3, None), tol=tol, method=method)


def test_first_row_matches_eigenvectors():
    T = _hermite(2.0, 7, None, seed=3)
    _, vectors = np.linalg.eigh(T.to_dense())
    spec = spectrum(T)
    np.testing.assert_allclose(spec.q, np.abs(vectors[0]), rtol=1e-8, atol=1e-12)
    np.testing.assert_allclose(inverse_iteration(T, spec.eigenvalues)[0], spec.q, rtol=1e-8, atol=1e-12)


def test_first_row_is_scale_invariant():
    T = _hermite(1.0, 12, None, seed=4)
    big = TridiagonalSym(T.diag * 1e60, T.subdiag * 1e60)
    np.testing.assert_allclose(first_row_eigvec(big, eigenvalues(big)), first_row_eigvec(T, eigenvalues(T)), rtol=1e-8)


def test_degenerate_spectrum_raises():
    T = TridiagonalSym(np.ones(2), np.zeros(1))
    np.testing.assert_allclose(eigenvalues(T), [1.0, 1.0])
    with pytest.raises(DegenerateSpectrumError):
        first_row_eigvec(T, [1.0, 1.0])


def test_reconstruct_round_trip():
    T = _hermite(2.5, 9, 5, seed=5)
    R = reconstruct(spectrum(T))
    scale = np.max(T.norm_bound())
    np.testing.assert_allclose(R.diag, T.diag, atol=1e-10 * scale)
    np.testing.assert_allclose(R.subdiag, T.subdiag, atol=1e-10 * scale)


def test_reconstruct_requires_positive_weights():
    with pytest.raises(DegenerateSpectrumError):
        reconstruct(Spectrum(np.array([0.0, 1.0]), np.array([1.0, 0.0])))


@pytest.mark.parametrize("beta, n", [(1.0, 2), (2.0, 8), (0.7, 15)])
def test_vandermonde_identity(beta, n):
    T = _hermite(beta, n, 20, seed=6)
    spec = spectrum(T)
    direct = vandermonde_direct(spec.eigenvalues)
    via_entries = vandermonde_tridiagonal(T, spec.q)
    np.testing.assert_array_equal(direct.sign, 1.0)
    np.testing.assert_allclose(via_entries.log_abs, direct.log_abs, rtol=1e-8, atol=1e-8)


def test_vandermonde_direct_ties():
    result = vandermonde_direct([1.0, 1.0, 2.0])
    assert result.sign == 0 and result.log_abs == -np.inf


def test_jacobian_t_to_qlambda_n2():
    T = TridiagonalSym(np.array([0.5, -0.3]), np.array([0.8]))
    spec = spectrum(T)
    expected = np.log(0.8) - np.sum(np.log(spec.q))
    np.testing.assert_allclose(jacobian_t_to_qlambda(T, spec.q).log_abs, expected)


@pytest.mark.parametrize(
    "diag, subdiag, expected",
    [
        ([3.0], [], 1 / 6),
        ([2.0, 0.5], [1.0], 1 / (4 * 0.5 * 4)),
    ],
)
def test_jacobian_b_to_t(diag, subdiag, expected):
    B = BidiagonalPos(np.array(diag), np.array(subdiag))
    np.testing.assert_allclose(jacobian_b_to_t(B).value(), expected)


def test_laguerre_spectrum_is_positive():
    B = sample_laguerre_factor(LaguerreParams(2.0, 5, 6.0), RandomStream(7), size=10)
    spec = laguerre_spectrum(B)
    assert np.all(spec.eigenvalues > 0)
    np.testing.assert_allclose(spec.eigenvalues**0.5, np.sort(np.linalg.svd(B.to_dense(), compute_uv=False)), rtol=1e-8)


@pytest.mark.parametrize("beta, n", [(2.0, 10), (4.0, 12)])
def test_eigenvalues_newton_polish(beta, n):
    T = _hermite(beta, n, 4, seed=9)
    expected = np.linalg.eigvalsh(T.to_dense())
    atol = 1e-11 * np.max(T.norm_bound())
    np.testing.assert_allclose(eigenvalues(T, tol=1e-6), expected, rtol=0, atol=atol)


def test_first_row_keeps_relative_accuracy_when_nearly_split():
    T = TridiagonalSym(np.array([0.0, 1.0, 2.0, 3.5]), np.array([1.0, 1.0, 1e-12]))
    spec = spectrum(T)
    assert spec.q[-1] < 1e-12
    # the identity is exact, so it only holds to 1e-9 if the tiny q_i is relatively accurate
    np.testing.assert_allclose(
        vandermonde_tridiagonal(T, spec.q).log_abs, vandermonde_direct(spec.eigenvalues).log_abs, rtol=0, atol=1e-9
    )
    R = reconstruct(spec)
    np.testing.assert_allclose(R.subdiag, T.subdiag, rtol=1e-8)
    np.testing.assert_allclose(R.diag, T.diag, rtol=1e-8, atol=1e-13)


def test_inverse_iteration_enlarges_singular_shift(monkeypatch):
    T = _hermite(2.0, 6, None, seed=8)
    lam = eigenvalues(T)
    expected = inverse_iteration(T, lam)
    calls = []

    def singular_once(*args, **kwargs):
        calls.append(1)
        if len(calls) == 1:
            raise LinAlgError("singular matrix")
        return solve_banded(*args, **kwargs)

    monkeypatch.setattr(spectral, "solve_banded", singular_once)
    np.testing.assert_allclose(inverse_iteration(T, lam), expected, atol=1e-10)
    assert len(calls) > 1


def test_inverse_iteration_gives_up(monkeypatch):
    def always_singular(*args, **kwargs):
        raise LinAlgError("singular matrix")

    monkeypatch.setattr(spectral, "solve_banded", always_singular)
    T = _hermite(2.0, 4, None, seed=8)
    with pytest.raises(DegenerateSpectrumError):
        inverse_iteration(T, eigenvalues(T))
