import pytest
import numpy as np

from betatrix.errors import ParameterError
from betatrix.matrices import BidiagonalPos, DenseSymmetric, Spectrum, TridiagonalSym, matrix_from_json


@pytest.mark.parametrize(
    "diag, subdiag",
    [
        (np.zeros(0), np.zeros(0)),
        (np.zeros(3), np.zeros(3)),
        (np.zeros(2), np.array([-1.0])),
        (np.array([np.nan, 0.0]), np.array([1.0])),
    ],
)
def test_tridiagonal_validation(diag, subdiag):
    with pytest.raises(ParameterError):
        TridiagonalSym(diag, subdiag)


def test_tridiagonal_properties():
    T = TridiagonalSym(np.array([[1.0, -2.0, 3.0]]), np.array([[0.5, 0.0]]))
    assert T.n == 3 and T.batch_shape == (1,) and len(T) == 1
    np.testing.assert_array_equal(T.is_degenerate, [True])
    np.testing.assert_allclose(T.norm_bound(), [3.0])


def test_json_schema():
    T = TridiagonalSym(np.array([1.0, 2.0]), np.array([0.5]))
    assert T.to_json() == {"kind": "tridiagonal", "diag": [1.0, 2.0], "subdiag": [0.5]}
    decoded = matrix_from_json(T.to_json())
    np.testing.assert_array_equal(decoded.to_dense(), T.to_dense())
    B = BidiagonalPos(np.array([[1.0, 2.0], [3.0, 4.0]]), np.array([[0.5], [0.25]]))
    assert [record["diag"] for record in B.to_json()] == [[1.0, 2.0], [3.0, 4.0]]
    with pytest.raises(ParameterError):
        matrix_from_json({"kind": "dense"})


def test_bidiagonal_dense_layout():
    B = BidiagonalPos(np.array([1.0, 2.0]), np.array([3.0]))
    np.testing.assert_array_equal(B.to_dense(), [[1.0, 0.0], [3.0, 2.0]])
    with pytest.raises(ParameterError):
        BidiagonalPos(np.array([-1.0, 2.0]), np.array([3.0]))


def test_dense_symmetric_validation():
    assert DenseSymmetric(np.array([[1.0, 1j], [-1j, 2.0]])).field == "complex"
    with pytest.raises(ParameterError):
        DenseSymmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))


@pytest.mark.parametrize(
    "eigenvalues, q",
    [
        ([1.0, 1.0], [0.6, 0.8]),
        ([1.0, 2.0], [-0.6, 0.8]),
        ([1.0, 2.0], [0.5, 0.5]),
    ],
)
def test_spectrum_validation(eigenvalues, q):
    with pytest.raises(ParameterError):
        Spectrum(np.array(eigenvalues), np.array(q))
