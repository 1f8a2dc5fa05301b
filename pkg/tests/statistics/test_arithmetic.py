import pytest
import numpy as np

from betatrix.statistics import Entry, Power, Trace


@pytest.mark.parametrize(
    "input_data, expected",
    [
        (np.array([[1.0, 2.0, 3.0]]), np.array([6.0])),
        (np.array([[1.0], [-4.0]]), np.array([1.0, -4.0])),
        (np.zeros((3, 5)), np.zeros(3)),
    ],
)
def test_trace(input_data, expected):
    func = Trace("input_data", name="output_data")
    np.testing.assert_almost_equal(func(input_data), expected)


@pytest.mark.parametrize(
    "input_data, index, expected",
    [
        (np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]), 0, np.array([1.0, 4.0])),
        (np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]), -1, np.array([3.0, 6.0])),
    ],
)
def test_entry(input_data, index, expected):
    func = Entry("input_data", name="output_data", index=index)
    np.testing.assert_almost_equal(func(input_data), expected)


@pytest.mark.parametrize(
    "input_data, exponent, expected",
    [
        (np.array([1.0, 2.0, 3.0]), 2.0, np.array([1.0, 4.0, 9.0])),
        (np.array([4.0, 9.0]), 0.5, np.array([2.0, 3.0])),
        (np.array([-2.0]), 3, np.array([-8.0])),
    ],
)
def test_power(input_data, exponent, expected):
    func = Power("input_data", name="output_data", exponent=exponent)
    np.testing.assert_almost_equal(func(input_data), expected)

