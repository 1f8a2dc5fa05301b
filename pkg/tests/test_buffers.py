import pytest
import numpy as np

from betatrix.buffers import DataBuffer
from betatrix.errors import ParameterError


def test_signals_share_the_sample_axis():
    data = DataBuffer({"diag": np.zeros((4, 3)), "subdiag": np.zeros((4, 2))})
    assert len(data) == 4
    with pytest.raises(ParameterError):
        data["lmax"] = np.zeros(5)
    with pytest.raises(ParameterError):
        data["scalar"] = 1.0
    data["diag"] = np.ones((4, 3))
    np.testing.assert_array_equal(data["diag"], np.ones((4, 3)))


def test_column_keys():
    data = DataBuffer({"eig": np.arange(6.0).reshape(3, 2)})
    np.testing.assert_array_equal(data["eig_1"], [1.0, 3.0, 5.0])
    with pytest.raises(KeyError):
        data["eig_2_x"]
    assert "eig_0" in data and "q" not in data


def test_extend_and_select():
    data = DataBuffer()
    data.extend(DataBuffer({"a": np.array([1.0]), "b": np.array([[1.0, 2.0]])}))
    data.extend(DataBuffer({"a": np.array([2.0, 3.0]), "b": np.array([[3.0, 4.0], [5.0, 6.0]])}))
    assert len(data) == 3
    assert list(data.select("b").keys()) == ["b"]
    with pytest.raises(ParameterError):
        data.extend(DataBuffer({"a": np.array([4.0])}))


def test_copy_is_shallow_but_independent():
    data = DataBuffer({"a": np.zeros(2)})
    other = data.copy()
    other["b"] = np.ones(2)
    assert "b" not in data


def test_to_dataframe():
    data = DataBuffer({"lmax": np.array([1.0, 2.0]), "eig": np.array([[0.0, 1.0], [0.5, 2.0]])})
    frame = data.to_dataframe()
    assert list(frame.columns) == ["lmax", "eig_0", "eig_1"]
    np.testing.assert_array_equal(frame["eig_1"], [1.0, 2.0])
    with pytest.raises(ParameterError):
        DataBuffer({"matrix": np.zeros((2, 2, 2))}).to_dataframe()
