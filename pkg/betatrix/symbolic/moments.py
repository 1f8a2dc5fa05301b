"""
Exact expectations over the tridiagonal β-Hermite and bidiagonal β-Laguerre models.

The characteristic polynomial is expanded with the matrix entries as formal variables;
each monomial then factorizes over independent entries, and every entry power is
replaced by its moment, which is a polynomial in s = β/2 (and a):

    N(0, 1)^{2j}          = (2j - 1)!!
    (χ_{kβ} / √2)^{2j}    = (ks)_j
    x_i^{2j}, x_i ~ χ_{2a - βi}     = 2^j (a - si)_j
    w_i^{2j}, w_i ~ χ_{kβ}          = 2^j (ks)_j
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from betatrix.errors import ParameterError
from betatrix.symbolic.betapoly import BetaPoly, ExpectedCharPoly, rising
from betatrix.symbolic.expansion import (
    DEFAULT_MONOMIAL_CAP,
    Monomials,
    add,
    multiply,
    power,
    tridiagonal_charpoly,
    variable,
)

logger = logging.getLogger(__name__)

ENTRY_KINDS = ("gaussian", "hermite_subdiag", "laguerre_diag", "laguerre_subdiag")
CHI_KINDS = ENTRY_KINDS[1:]
ENSEMBLES = ("hermite", "laguerre")
TARGETS = ("elementary", "det", "charpoly")


@dataclass(frozen=True)
class EntryMoment:
    """
    E[entry^power] for one law: a Gaussian diagonal entry, a χ_{kβ}/√2 Hermite subdiagonal entry,
    the Laguerre diagonal entry x_k ~ χ_{2a-βk}, or a χ_{kβ} Laguerre subdiagonal entry.
    """

    kind: str
    power: int
    k: int = 0

    def __post_init__(self):
        if self.kind not in ENTRY_KINDS:
            raise ParameterError(f"Unknown entry kind {self.kind!r}, expected one of {ENTRY_KINDS}")
        if int(self.power) != self.power or self.power < 0:
            raise ParameterError(f"Moment power must be a nonnegative integer, got {self.power}")
        if self.kind in CHI_KINDS and self.power % 2:
            raise ParameterError(f"Odd moment {self.power} of a {self.kind} entry is not a polynomial in s")
        if self.kind in ("hermite_subdiag", "laguerre_subdiag") and self.k < 1:
            raise ParameterError(f"Subdiagonal dof multiplier must be positive, got {self.k}")

    @property
    def value(self) -> BetaPoly:
        return entry_moment(self.kind, self.power, self.k)


@lru_cache(maxsize=None)
def entry_moment(kind: str, power: int, k: int = 0) -> BetaPoly:
    EntryMoment(kind, power, k)
    if kind == "gaussian":
        if power % 2:
            return BetaPoly(0)
        return BetaPoly(math.prod(range(power - 1, 0, -2)))
    j = power // 2
    s, a = BetaPoly.s(), BetaPoly.a()
    if kind == "hermite_subdiag":
        return rising(k * s, j)
    elif kind == "laguerre_diag":
        return 2**j * rising(a - k * s, j)
    return 2**j * rising(k * s, j)


@dataclass(frozen=True)
class FormalTridiagonal:
    """Tridiagonal matrix with polynomial entries in formal variables, each with its law"""

    names: tuple
    laws: tuple
    diag: tuple
    sub2: tuple

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def nvars(self) -> int:
        return len(self.names)


def hermite_formal(n: int) -> FormalTridiagonal:
    """Gaussian diagonal g_i; subdiagonal b_j ~ χ_{β(n-1-j)}/√2"""
    names = ("y", *(f"g{i}" for i in range(n)), *(f"b{j}" for j in range(n - 1)))
    laws = (*(("gaussian", 0),) * n, *(("hermite_subdiag", n - 1 - j) for j in range(n - 1)))
    nvars = len(names)
    diag = tuple(variable(1 + i, nvars) for i in range(n))
    sub2 = tuple(variable(1 + n + j, nvars, 2) for j in range(n - 1))
    return FormalTridiagonal(names, laws, diag, sub2)


def laguerre_formal(m: int) -> FormalTridiagonal:
    """
    T = B Bᵀ with factor diagonal x_i ~ χ_{2a-βi} and factor subdiagonal w_i = B[i+1, i] ~ χ_{β(m-1-i)}:
    T[0, 0] = x_0², T[i, i] = x_i² + w_{i-1}², T[i+1, i]² = w_i² x_i²
    """
    names = ("y", *(f"x{i}" for i in range(m)), *(f"w{i}" for i in range(m - 1)))
    laws = (*(("laguerre_diag", i) for i in range(m)), *(("laguerre_subdiag", m - 1 - i) for i in range(m - 1)))
    nvars = len(names)
    x = [variable(1 + i, nvars, 2) for i in range(m)]
    w = [variable(1 + m + i, nvars, 2) for i in range(m - 1)]
    diag = tuple([x[0]] + [add(x[i], w[i - 1]) for i in range(1, m)])
    sub2 = tuple(multiply(w[i], x[i]) for i in range(m - 1))
    return FormalTridiagonal(names, laws, diag, sub2)


def _formal(ensemble: str, size: int) -> FormalTridiagonal:
    if ensemble == "hermite":
        return hermite_formal(size)
    elif ensemble == "laguerre":
        return laguerre_formal(size)
    raise ParameterError(f"Unknown ensemble {ensemble!r}, expected one of {ENSEMBLES}")


def expectation(monomials: Monomials, formal: FormalTridiagonal) -> dict:
    """E over the entry laws, collected by the power of y; returns {y power: BetaPoly}"""
    collected = defaultdict(lambda: BetaPoly(0))
    for exp, coeff in monomials.items():
        value = BetaPoly(coeff)
        for (kind, k), pw, name in zip(formal.laws, exp[1:], formal.names[1:]):
            if not pw:
                continue
            if kind in CHI_KINDS:
                assert pw % 2 == 0, f"Odd power {pw} of chi variable {name} in the expansion"
            moment = entry_moment(kind, pw, k)
            if moment.is_zero:
                break
            value = value * moment
        else:
            collected[exp[0]] = collected[exp[0]] + value
    return dict(collected)


@dataclass(frozen=True)
class MomentQuery:
    """
    What to compute for an ensemble of a given size: E[e_i(λ)] (target "elementary", order i),
    E[det^k] (target "det", order k) or E[det(yI - T)] (target "charpoly").
    """

    ensemble: str
    size: int
    target: str
    order: int = 0
    cap: int = DEFAULT_MONOMIAL_CAP

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise ParameterError(f"Unknown ensemble {self.ensemble!r}, expected one of {ENSEMBLES}")
        if int(self.size) != self.size or self.size < 1:
            raise ParameterError(f"Size must be a positive integer, got {self.size}")
        if self.target not in TARGETS:
            raise ParameterError(f"Unknown target {self.target!r}, expected one of {TARGETS}")
        if int(self.order) != self.order or self.order < 0:
            raise ParameterError(f"Order must be a nonnegative integer, got {self.order}")
        if self.target == "elementary" and self.order > self.size:
            raise ParameterError(f"Elementary symmetric index {self.order} exceeds size {self.size}")
        if self.cap < 1:
            raise ParameterError(f"Monomial cap must be positive, got {self.cap}")


def _charpoly_monomials(q: MomentQuery):
    formal = _formal(q.ensemble, q.size)
    return formal, tridiagonal_charpoly(formal.diag, formal.sub2, formal.nvars, q.cap)


def _check_degree(q: MomentQuery, result: BetaPoly):
    degree = result.degree_s if q.ensemble == "hermite" else result.total_degree
    assert degree <= q.order, f"E[e_{q.order}] has degree {degree} > {q.order}: {result}"


def expected_elementary_symmetric(q: MomentQuery) -> BetaPoly:
    """E[e_i(λ)] from the coefficient of y^{n-i} in det(yI - T), which is (-1)^i e_i"""
    if q.target != "elementary":
        raise ParameterError(f"Expected an elementary symmetric query, got target {q.target!r}")
    formal, monomials = _charpoly_monomials(q)
    coefficient = {exp: c for exp, c in monomials.items() if exp[0] == q.size - q.order}
    result = expectation(coefficient, formal).get(q.size - q.order, BetaPoly(0))
    result = result if q.order % 2 == 0 else -result
    _check_degree(q, result)
    return result


def det_moment(q: MomentQuery) -> BetaPoly:
    """E[det(T)^k]; Hermite results are checked to have integer coefficients in s"""
    if q.target != "det":
        raise ParameterError(f"Expected a determinant query, got target {q.target!r}")
    formal, monomials = _charpoly_monomials(q)
    sign = -1 if q.size % 2 else 1
    det = {exp: sign * c for exp, c in monomials.items() if exp[0] == 0}
    expanded = power(det, q.order, formal.nvars, q.cap)
    logger.info(f"det^{q.order} of {q.ensemble} size {q.size} expanded to {len(expanded)} monomials")
    result = expectation(expanded, formal).get(0, BetaPoly(0))
    if q.ensemble == "hermite":
        assert result.has_integer_coefficients, f"Hermite determinant moment {result} has non-integer coefficients"
    return result


def _hermite_charpoly(n: int) -> ExpectedCharPoly:
    """E[P_k] = y E[P_{k-1}] - s(k-1) E[P_{k-2}]: the step-k entries are independent of P_{k-1}, P_{k-2}"""
    s = BetaPoly.s()
    prev, cur = [], [BetaPoly(1)]
    for k in range(1, n + 1):
        shifted = [BetaPoly(0)] + cur
        if k > 1:
            for j, c in enumerate(prev):
                shifted[j] = shifted[j] - (k - 1) * s * c
        prev, cur = cur, shifted
    return ExpectedCharPoly(cur)


def expected_charpoly(ensemble: str, size: int, cap: int = DEFAULT_MONOMIAL_CAP) -> ExpectedCharPoly:
    """
    E[det(yI - T)]. The Hermite case follows the linear recurrence of expectations; for Laguerre
    the entries of T = B Bᵀ share factor variables across recurrence steps, so the full
    expansion is substituted instead.
    """
    MomentQuery(ensemble, size, "charpoly", cap=cap)
    if ensemble == "hermite":
        return _hermite_charpoly(size)
    return expected_charpoly_by_expansion(ensemble, size, cap)


def expected_charpoly_by_expansion(ensemble: str, size: int, cap: int = DEFAULT_MONOMIAL_CAP) -> ExpectedCharPoly:
    """Full expansion route for either ensemble, the cross-check of the Hermite recurrence"""
    formal, monomials = _charpoly_monomials(MomentQuery(ensemble, size, "charpoly", cap=cap))
    collected = expectation(monomials, formal)
    return ExpectedCharPoly([collected.get(k, BetaPoly(0)) for k in range(size + 1)])


def evaluate_query(q: MomentQuery):
    """Dispatch a query to the matching computation"""
    if q.target == "elementary":
        return expected_elementary_symmetric(q)
    elif q.target == "det":
        return det_moment(q)
    return expected_charpoly(q.ensemble, q.size, q.cap)


__all__ = [
    "EntryMoment",
    "MomentQuery",
    "FormalTridiagonal",
    "entry_moment",
    "hermite_formal",
    "laguerre_formal",
    "expectation",
    "expected_elementary_symmetric",
    "det_moment",
    "expected_charpoly",
    "expected_charpoly_by_expansion",
    "evaluate_query",
]
