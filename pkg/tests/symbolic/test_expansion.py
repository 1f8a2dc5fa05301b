import pytest

from betatrix.errors import ResourceCapError
from betatrix.symbolic.expansion import add, constant, multiply, power, tridiagonal_charpoly, variable


def test_add_cancels_terms():
    y = variable(0, 2)
    assert add(y, y, scale=-1) == {}
    assert add(constant(3, 2), y) == {(0, 0): 3, (1, 0): 1}


def test_power_binomial():
    p = add(variable(0, 2), variable(1, 2))
    assert power(p, 3, 2) == {(3, 0): 1, (2, 1): 3, (1, 2): 3, (0, 3): 1}
    assert power(p, 0, 2) == {(0, 0): 1}


def test_numeric_charpoly():
    diag = (constant(2, 1), constant(2, 1))
    sub2 = (constant(1, 1),)
    assert tridiagonal_charpoly(diag, sub2, 1) == {(2,): 1, (1,): -4, (0,): 3}


def test_formal_charpoly_size_2():
    # variables: y, d0, d1, b0 (b0 enters squared)
    diag = (variable(1, 4), variable(2, 4))
    sub2 = (variable(3, 4, 2),)
    expected = {(2, 0, 0, 0): 1, (1, 1, 0, 0): -1, (1, 0, 1, 0): -1, (0, 1, 1, 0): 1, (0, 0, 0, 2): -1}
    assert tridiagonal_charpoly(diag, sub2, 4) == expected


def test_multiply_cap():
    p = add(variable(0, 1), constant(1, 1))
    with pytest.raises(ResourceCapError) as info:
        multiply(p, p, cap=1)
    assert info.value.exit_code == 3
