import pytest

from betatrix.errors import ParameterError, ResourceCapError
from betatrix.symbolic.betapoly import BetaPoly
from betatrix.symbolic.moments import (
    EntryMoment,
    MomentQuery,
    det_moment,
    entry_moment,
    evaluate_query,
    expected_charpoly,
    expected_charpoly_by_expansion,
    expected_elementary_symmetric,
)

s, a = BetaPoly.s(), BetaPoly.a()


@pytest.mark.parametrize(
    "kind, power, k, expected",
    [
        ("gaussian", 3, 0, BetaPoly(0)),
        ("gaussian", 4, 0, BetaPoly(3)),
        ("hermite_subdiag", 2, 2, 2 * s),
        ("hermite_subdiag", 4, 1, s**2 + s),
        ("laguerre_diag", 2, 1, 2 * a - 2 * s),
        ("laguerre_subdiag", 4, 1, 4 * s**2 + 4 * s),
    ],
)
def test_entry_moment(kind, power, k, expected):
    assert entry_moment(kind, power, k) == expected


@pytest.mark.parametrize(
    "kind, power, k",
    [
        ("hermite_subdiag", 3, 1),
        ("hermite_subdiag", 2, 0),
        ("uniform", 2, 1),
        ("gaussian", -2, 0),
    ],
)
def test_entry_moment_validation(kind, power, k):
    with pytest.raises(ParameterError):
        EntryMoment(kind, power, k)


@pytest.mark.parametrize(
    "n, k, expected",
    [
        (1, 2, "1"),
        (2, 1, "-s"),
        (2, 2, "s^2+s+1"),
        (3, 1, "0"),
    ],
)
def test_hermite_det_moments(n, k, expected):
    assert str(det_moment(MomentQuery("hermite", n, "det", k))) == expected


def test_hermite_det_moments_are_integer():
    for n in (3, 4):
        for k in (1, 2):
            assert det_moment(MomentQuery("hermite", n, "det", k)).has_integer_coefficients


def test_det_moment_value_at_beta_2():
    # E[det^2] for n = 2 at s = 1
    assert det_moment(MomentQuery("hermite", 2, "det", 2)).evaluate(2) == 3.0


@pytest.mark.parametrize(
    "ensemble, size, order, expected",
    [
        ("hermite", 2, 1, BetaPoly(0)),
        ("hermite", 2, 2, -s),
        ("hermite", 3, 2, -3 * s),
        ("laguerre", 1, 1, 2 * a),
        ("laguerre", 2, 1, 4 * a),
        ("laguerre", 2, 2, 4 * a**2 - 4 * s * a),
    ],
)
def test_expected_elementary_symmetric(ensemble, size, order, expected):
    assert expected_elementary_symmetric(MomentQuery(ensemble, size, "elementary", order)) == expected


def test_expected_charpoly_hermite():
    assert str(expected_charpoly("hermite", 3)) == "y^3-3*s*y"
    assert str(expected_charpoly("hermite", 2)) == "y^2-s"


@pytest.mark.parametrize("n", [1, 2, 4, 5])
def test_hermite_recurrence_matches_expansion(n):
    assert expected_charpoly("hermite", n) == expected_charpoly_by_expansion("hermite", n)


def test_expected_charpoly_laguerre_m2():
    p = expected_charpoly("laguerre", 2)
    assert p.coeffs == (4 * a**2 - 4 * s * a, -4 * a, BetaPoly(1))


def test_query_validation_and_dispatch():
    with pytest.raises(ParameterError):
        MomentQuery("hermite", 3, "elementary", 4)
    with pytest.raises(ParameterError):
        MomentQuery("jacobi", 3, "det", 1)
    with pytest.raises(ParameterError):
        det_moment(MomentQuery("hermite", 3, "charpoly"))
    assert evaluate_query(MomentQuery("hermite", 2, "det", 1)) == -s


def test_cap_exceeded():
    with pytest.raises(ResourceCapError):
        det_moment(MomentQuery("hermite", 6, "det", 3, cap=10))
