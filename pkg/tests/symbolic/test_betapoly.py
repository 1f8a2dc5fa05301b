from fractions import Fraction

import pytest

from betatrix.errors import ParameterError
from betatrix.symbolic.betapoly import BetaPoly, ExpectedCharPoly, rising

s, a = BetaPoly.s(), BetaPoly.a()

@pytest.mark.parametrize(
    "poly, expected",
    [
        (s**2 + s + 1, "s^2+s+1"),
        (-s, "-s"),
        (BetaPoly(0), "0"),
        (2 * a - 3 * s * a + Fraction(1, 2), "-3*s*a+2*a+1/2"),
        (rising(s, 2), "s^2+s"),
    ],
)
def test_to_string(poly, expected):
    assert poly.to_string() == expected

@pytest.mark.parametrize(
    "poly, beta, a_value, expected",
    [
        (s**2 + s + 1, 2, None, 3.0),
        (2 * a - s, 1, 3, 5.5),
        (BetaPoly(Fraction(1, 3)), 7, None, 1 / 3),
    ],
)
def test_evaluate(poly, beta, a_value, expected):
    assert poly.evaluate(beta, a_value) == expected

def test_evaluate_needs_a():
    with pytest.raises(ParameterError):
        (s * a).evaluate(2)

def test_properties():
    poly = s**3 * a + Fraction(1, 2) * s
    assert poly.degree_s == 3
    assert poly.total_degree == 4
    assert not poly.has_integer_coefficients
    assert poly.terms() == {(3, 1): Fraction(1), (1, 0): Fraction(1, 2)}

def test_json_round_trip():
    poly = s**2 * a - Fraction(2, 3) * a + 5
    encoded = poly.to_json()
    assert encoded["vars"] == ["s", "a"]
    assert encoded["terms"][0] == {"exp": [2, 1], "num": "1", "den": "1"}
    assert BetaPoly.from_json(encoded) == poly

def test_json_rejects_other_variables():
    with pytest.raises(ParameterError):
        BetaPoly.from_json({"vars": ["beta"], "terms": []})

def test_is_immutable():
    with pytest.raises(AttributeError):
        s.poly = None

def test_charpoly_rendering_and_validation():
    p = ExpectedCharPoly([s + 1, 0, -2 * s, 1])
    assert p.to_string() == "y^3-2*s*y^2+s+1"
    assert p.degree == 3
    assert p.evaluate(2) == [2.0, 0.0, -2.0, 1.0]
    assert ExpectedCharPoly.from_json(p.to_json()) == p
    with pytest.raises(ParameterError):
        ExpectedCharPoly([1, 2])
