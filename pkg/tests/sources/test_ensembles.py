import pytest
import numpy as np

from betatrix.errors import ParameterError
from betatrix.sources.ensembles import (
    GaussianEnsemble,
    HermiteEnsemble,
    HermiteParams,
    LaguerreEnsemble,
    LaguerreParams,
    WishartEnsemble,
    hermite_subdiag_dofs,
    laguerre_factor_dofs,
    laguerre_from_factor,
    sample_dense_classical,
    sample_dense_wishart,
    sample_hermite,
    sample_laguerre_factor,
)
from betatrix.sources.streams import RandomStream
from betatrix.spectral import sturm_count


@pytest.mark.parametrize(
    "params",
    [
        (0.0, 3),
        (-1.0, 3),
        (2.0, 0),
        (2.0, 2.5),
    ],
)
def test_hermite_params_validation(params):
    with pytest.raises(ParameterError):
        HermiteParams(*params)


@pytest.mark.parametrize(
    "beta, m, a",
    [
        (1.0, 3, 1.0),
        (2.0, 2, 0.5),
        (1.0, 0, 2.0),
    ],
)
def test_laguerre_params_validation(beta, m, a):
    with pytest.raises(ParameterError):
        LaguerreParams(beta, m, a)


def test_laguerre_p():
    assert LaguerreParams(2.0, 4, 5.0).p == 4.0


def test_dofs_top_to_bottom():
    np.testing.assert_equal(hermite_subdiag_dofs(HermiteParams(0.5, 4)), [1.5, 1.0, 0.5])
    diag, subdiag = laguerre_factor_dofs(LaguerreParams(1.0, 3, 1.7))
    np.testing.assert_allclose(diag, [3.4, 2.4, 1.4])
    np.testing.assert_equal(subdiag, [2.0, 1.0])


def test_sample_hermite_shapes_and_n1():
    T = sample_hermite(HermiteParams(2.0, 5), RandomStream(0), size=(3, 4))
    assert T.diag.shape == (3, 4, 5)
    assert T.subdiag.shape == (3, 4, 4)
    single = sample_hermite(HermiteParams(2.0, 1), RandomStream(0))
    assert single.n == 1 and single.subdiag.shape == (0,)


def test_hermite_subdiag_second_moments():
    p = HermiteParams(1.3, 6)
    T = sample_hermite(p, RandomStream(1), size=40_000)
    np.testing.assert_allclose(np.mean(T.subdiag**2, axis=0), hermite_subdiag_dofs(p) / 2, rtol=0.05)
    np.testing.assert_allclose(np.var(T.diag, axis=0), 1.0, rtol=0.05)


def test_laguerre_from_factor_matches_dense_product():
    B = sample_laguerre_factor(LaguerreParams(1.0, 4, 2.2), RandomStream(3), size=10)
    T = laguerre_from_factor(B)
    dense = B.to_dense()
    np.testing.assert_allclose(T.to_dense(), dense @ np.swapaxes(dense, -1, -2), rtol=1e-13, atol=1e-13)


def test_hermite_entries_are_uncorrelated():
    draws = 200_000
    T = sample_hermite(HermiteParams(1.5, 4), RandomStream(11), size=draws)
    corr = np.corrcoef(np.concatenate([T.diag, T.subdiag], axis=-1), rowvar=False)
    off_diagonal = corr[~np.eye(len(corr), dtype=bool)]
    # 3 standard errors of a 10^5 draw estimate
    assert np.max(np.abs(off_diagonal)) < 3 / np.sqrt(100_000)


@pytest.mark.parametrize("beta, m, a", [(1.0, 4, 2.0), (2.0, 5, 6.0), (0.5, 6, 2.5)])
def test_laguerre_from_factor_is_positive_definite(beta, m, a):
    B = sample_laguerre_factor(LaguerreParams(beta, m, a), RandomStream(m), size=1000)
    T = laguerre_from_factor(B)
    dense = T.to_dense()
    minors = np.stack([np.linalg.det(dense[..., :k, :k]) for k in range(1, m + 1)], axis=-1)
    assert np.all(minors > 0)
    assert np.all(sturm_count(T, 0.0) == 0)
    assert np.all(np.linalg.eigvalsh(dense) > 0)


def test_laguerre_m1_is_chi_square():
    a = 0.7
    B = sample_laguerre_factor(LaguerreParams(1.0, 1, a), RandomStream(5), size=100_000)
    np.testing.assert_allclose(np.mean(B.diag[:, 0] ** 2), 2 * a, rtol=0.02)


@pytest.mark.parametrize("kind", ["GOE", "GUE"])
def test_dense_classical_is_hermitian(kind):
    A = sample_dense_classical(kind, 6, RandomStream(0), size=3)
    np.testing.assert_allclose(A.matrix, np.conj(np.swapaxes(A.matrix, -1, -2)))
    eigs = np.linalg.eigvals(A.matrix)
    assert np.max(np.abs(eigs.imag)) < 1e-12


def test_goe_entry_variances():
    A = sample_dense_classical("GOE", 3, RandomStream(7), size=50_000).matrix
    np.testing.assert_allclose(np.var(A[:, 0, 0]), 1.0, rtol=0.05)
    np.testing.assert_allclose(np.var(A[:, 1, 0]), 0.5, rtol=0.05)


def test_wishart_shape_and_validation():
    G = sample_dense_wishart("complex", 3, 5, RandomStream(0), size=2)
    assert G.shape == (2, 3, 5) and np.iscomplexobj(G)
    with pytest.raises(ParameterError):
        sample_dense_wishart("real", 5, 3, RandomStream(0))


@pytest.mark.parametrize(
    "source, signals",
    [
        (HermiteEnsemble(2.0, 4), {"diag": (7, 4), "subdiag": (7, 3)}),
        (
            LaguerreEnsemble(1.0, 3, 2.0),
            {"factor_diag": (7, 3), "factor_subdiag": (7, 2), "diag": (7, 3), "subdiag": (7, 2)},
        ),
        (GaussianEnsemble("GUE", 3), {"matrix": (7, 3, 3)}),
        (WishartEnsemble("real", 2, 4), {"matrix": (7, 2, 4)}),
    ],
)
def test_sources_sample_buffers(source, signals):
    data = source.sample(RandomStream(0), 7)
    assert {k: v.shape for k, v in data.items()} == signals
    assert len(data) == 7


def test_source_config_json():
    assert HermiteEnsemble(2.0, 4).config_json() == {"ensemble": "HermiteEnsemble", "params": {"beta": 2.0, "n": 4}}
    with pytest.raises(ParameterError):
        GaussianEnsemble("GSE", 3)
