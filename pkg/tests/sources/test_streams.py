import pytest
import numpy as np
import scipy.stats

from betatrix.errors import ParameterError
from betatrix.sources.streams import ChiLaw, RandomStream, chi, chi_even_moment, gamma, gaussian


def test_substreams_are_reproducible_and_distinct():
    a = RandomStream(11, 3).uniform(5)
    b = RandomStream(11, 3).uniform(5)
    c = RandomStream(11, 4).uniform(5)
    np.testing.assert_array_equal(a, b)
    assert not np.any(a == c)


def test_split_keeps_seed():
    stream = RandomStream(5).split(9)
    assert (stream.seed, stream.stream_id) == (5, 9)
    np.testing.assert_array_equal(stream.uniform(3), RandomStream(5, 9).uniform(3))


def test_gaussian_consumes_whole_pairs():
    fresh = RandomStream(1).uniform(5)
    stream = RandomStream(1)
    gaussian(stream, size=3)
    np.testing.assert_equal(stream.uniform(), fresh[4])


def test_gaussian_moments():
    z = gaussian(RandomStream(0), size=200_000)
    assert abs(z.mean()) < 0.01
    assert abs(z.var() - 1) < 0.02


@pytest.mark.parametrize("shape", [0.3, 1.0, 4.5])
def test_gamma_mean_and_variance(shape):
    g = gamma(RandomStream(2), shape, size=200_000)
    np.testing.assert_allclose(g.mean(), shape, rtol=0.02)
    np.testing.assert_allclose(g.var(), shape, rtol=0.05)


def test_gamma_rejects_nonpositive_shape():
    with pytest.raises(ParameterError):
        gamma(RandomStream(0), 0.0, size=3)


@pytest.mark.parametrize("dof", [0.5, 3.0, 7.3])
def test_chi_second_moment(dof):
    x = chi(RandomStream(4), ChiLaw(dof), size=200_000)
    assert np.all(x > 0)
    np.testing.assert_allclose(np.mean(x**2), dof, rtol=0.03)


def test_chi_law_rejects_zero_dof():
    with pytest.raises(ParameterError):
        ChiLaw(np.array([1.0, 0.0]))


@pytest.mark.parametrize(
    "r, k, expected",
    [
        (2, 0, 1),
        (2, 2, 8),
        (3, 3, 105),
        (0.5, 1, 0.5),
    ],
)
def test_chi_even_moment(r, k, expected):
    assert chi_even_moment(r, k) == expected


@pytest.mark.parametrize("dof", [0.3, 1.0, 2.0, 7.5])
def test_chi_squares_follow_chi_square_law(dof):
    x = chi(RandomStream(21, int(10 * dof)), ChiLaw(dof), size=20_000)
    assert scipy.stats.kstest(x**2, scipy.stats.chi2(dof).cdf).pvalue > 1e-3


@pytest.mark.parametrize("shape", [0.15, 0.5, 0.95, 3.0])
def test_gamma_follows_gamma_law(shape):
    x = gamma(RandomStream(22, int(100 * shape)), shape, size=20_000)
    assert scipy.stats.kstest(x, scipy.stats.gamma(shape).cdf).pvalue > 1e-3


def test_gaussian_follows_normal_law():
    z = gaussian(RandomStream(23), size=20_000)
    assert scipy.stats.kstest(z, scipy.stats.norm.cdf).pvalue > 1e-3
