import math
from fractions import Fraction

import pytest
import numpy as np
import scipy.stats
from scipy.integrate import quad

import betatrix.closed_forms as closed_forms
from betatrix.closed_forms import (
    EnsembleDensity,
    JacobiParams,
    charpoly_scaling_report,
    classical_monic,
    discriminant_moment,
    discriminant_moment_gamma_ratio,
    discriminant_moment_product,
    log_c_hermite,
    log_c_laguerre,
    log_c_q,
    log_density_hermite,
    log_density_jacobi,
    log_density_laguerre,
    log_rising_factorial,
    rising_factorial,
    selberg_hermite,
    selberg_jacobi,
    selberg_laguerre,
    semicircle_cdf,
    semicircle_density,
)
from betatrix.errors import MomentMismatchError, ParameterError
from betatrix.sources.ensembles import HermiteParams, LaguerreParams
from betatrix.symbolic.moments import expected_charpoly


def test_hermite_n1_is_standard_normal():
    x = np.array([[-1.3], [0.0], [2.2]])
    np.testing.assert_allclose(log_density_hermite(x, 1.7), scipy.stats.norm.logpdf(x[:, 0]))


def test_hermite_n2_beta2_constant():
    np.testing.assert_allclose(log_c_hermite(2.0, 2), -math.log(4 * math.pi))
    np.testing.assert_allclose(selberg_hermite(2.0, 2), math.log(4 * math.pi))


@pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
def test_laguerre_m1_is_chi_square(a):
    x = np.array([0.2, 1.0, 7.5])
    np.testing.assert_allclose(log_density_laguerre(x[:, None], 1.0, a), scipy.stats.chi2(2 * a).logpdf(x))
    np.testing.assert_allclose(log_c_laguerre(1.0, 1, a), -a * math.log(2) - math.lgamma(a))


def test_jacobi_m1_is_beta():
    x = np.array([0.1, 0.5, 0.9])
    np.testing.assert_allclose(log_density_jacobi(x[:, None], 2.0, 1.5, 3.0), scipy.stats.beta(1.5, 3.0).logpdf(x))


@pytest.mark.parametrize("beta, n, expected", [(2.0, 2, math.log(2)), (1.0, 1, 0.0), (4.0, 2, math.log(12))])
def test_log_c_q(beta, n, expected):
    np.testing.assert_allclose(log_c_q(beta, n), expected, atol=1e-14)


def test_beta_zero_constant_is_gaussian_product():
    np.testing.assert_allclose(log_c_hermite(0.0, 4), -2 * math.log(2 * math.pi))


@pytest.mark.parametrize(
    "call",
    [
        lambda: log_c_hermite(-1.0, 2),
        lambda: log_c_hermite(1.0, 0),
        lambda: log_c_q(0.0, 2),
        lambda: log_density_laguerre(np.array([[-1.0]]), 1.0, 1.0),
        lambda: log_density_hermite(np.array([[np.inf, 0.0]]), 1.0),
        lambda: log_density_jacobi(np.array([[1.0]]), 1.0, 1.0, 1.0),
        lambda: JacobiParams(2.0, 3, 1.5, 3.0),
        lambda: EnsembleDensity("Hermite", LaguerreParams(1.0, 1, 1.0)),
    ],
)
def test_validation(call):
    with pytest.raises(ParameterError):
        call()


def test_coinciding_eigenvalues_have_zero_density():
    assert log_density_hermite(np.array([0.5, 0.5]), 2.0) == -np.inf


def test_ensemble_density_dispatch():
    density = EnsembleDensity.from_params(LaguerreParams(2.0, 2, 3.0))
    assert density.kind == "Laguerre" and density.size == 2
    lam = np.array([0.5, 2.0])
    np.testing.assert_allclose(density(lam), log_density_laguerre(lam, 2.0, 3.0))


@pytest.mark.parametrize(
    "x, k, expected",
    [
        (2, 3, 24),
        (Fraction(1, 2), 2, Fraction(3, 4)),
        (5, 0, 1),
    ],
)
def test_rising_factorial(x, k, expected):
    assert rising_factorial(x, k) == expected


def test_rising_factorial_poles():
    with pytest.raises(ParameterError):
        rising_factorial(-1, 3)
    with pytest.raises(ParameterError):
        log_rising_factorial(-0.5, 2)
    np.testing.assert_allclose(log_rising_factorial(2.0, 3), math.log(24))


def test_discriminant_moment_hermite_n2():
    np.testing.assert_allclose(discriminant_moment("Hermite", HermiteParams(2.0, 2), 1), math.log(6))
    assert discriminant_moment("Hermite", HermiteParams(2.0, 5), 0) == 0.0


@pytest.mark.parametrize(
    "kind, params, k",
    [
        ("Hermite", HermiteParams(1.0, 4), 2),
        ("Hermite", HermiteParams(0.6, 3), 3),
        ("Laguerre", LaguerreParams(1.0, 3, 1.7), 1),
        ("Laguerre", LaguerreParams(2.5, 2, 2.0), 2),
        ("Jacobi", JacobiParams(1.0, 3, 1.7, 2.3), 1),
        ("Jacobi", JacobiParams(4.0, 2, 2.5, 3.1), 2),
    ],
)
def test_discriminant_moment_forms_agree(kind, params, k):
    np.testing.assert_allclose(
        discriminant_moment(kind, params, k), discriminant_moment_gamma_ratio(kind, params, k), rtol=1e-10
    )


def test_discriminant_moment_rejects_disagreeing_forms(monkeypatch):
    params = HermiteParams(1.0, 3)
    product = discriminant_moment_product("Hermite", params, 2)
    monkeypatch.setattr(closed_forms, "discriminant_moment_gamma_ratio", lambda *args: product + 1e-6)
    with pytest.raises(MomentMismatchError):
        discriminant_moment("Hermite", params, 2)


@pytest.mark.parametrize("beta, a1, a2", [(2.0, 1.5, 3.0), (0.7, 0.4, 2.2)])
def test_selberg_m1_is_beta_and_gamma_integral(beta, a1, a2):
    np.testing.assert_allclose(
        selberg_jacobi(beta, a1, a2, 1), math.lgamma(a1) + math.lgamma(a2) - math.lgamma(a1 + a2), rtol=1e-13
    )
    np.testing.assert_allclose(selberg_laguerre(beta, a1, 1), a1 * math.log(2) + math.lgamma(a1), rtol=1e-13)


@pytest.mark.parametrize(
    "family, n, alpha, scale, expected",
    [
        ("HermiteProbabilists", 3, None, 1, [0, -3, 0, 1]),
        ("HermitePhysicists", 2, None, 1, [Fraction(-1, 2), 0, 1]),
        ("GeneralizedLaguerre", 1, 0, 2, [-2, 1]),
        ("HermiteProbabilists", 0, None, 1, [1]),
    ],
)
def test_classical_monic(family, n, alpha, scale, expected):
    poly = classical_monic(family, n, alpha=alpha, scale=scale)
    np.testing.assert_allclose(poly.to_numpy(), [float(c) for c in expected])


def test_classical_monic_validation():
    with pytest.raises(ParameterError):
        classical_monic("Legendre", 2)
    with pytest.raises(ParameterError):
        classical_monic("GeneralizedLaguerre", 2)


@pytest.mark.parametrize("n, beta", [(2, 1.0), (3, 2.0), (4, 2.7)])
def test_expected_hermite_charpoly_is_scaled_hermite(n, beta):
    report = charpoly_scaling_report(n, beta)
    np.testing.assert_allclose(expected_charpoly("hermite", n).evaluate(beta), report["hermite"]["derived"], atol=1e-12)
    assert report["hermite"]["max_abs_difference"] > 0


@pytest.mark.parametrize("m, beta, a", [(1, 1.0, 0.7), (2, 2.0, 3.0), (2, 0.8, 1.1)])
def test_expected_laguerre_charpoly_is_scaled_laguerre(m, beta, a):
    report = charpoly_scaling_report(m, beta, a)
    np.testing.assert_allclose(
        expected_charpoly("laguerre", m).evaluate(beta, a), report["laguerre"]["derived"], rtol=1e-12, atol=1e-12
    )


def test_semicircle():
    points = [-2.0, -math.sqrt(2), 0.0, math.sqrt(2), 3.0]
    np.testing.assert_allclose(semicircle_cdf(points), [0, 0, 0.5, 1, 1], atol=1e-15)
    total, _ = quad(semicircle_density, -math.sqrt(2), math.sqrt(2))
    np.testing.assert_allclose(total, 1.0, rtol=1e-8)
    assert semicircle_density(1.5) == 0.0
