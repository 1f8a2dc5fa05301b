"""
Exact polynomials in s = β/2 and the Laguerre parameter a, backed by sympy's `Poly` over QQ.
"""
from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.polys.polyerrors import CoercionFailed, PolynomialError

from betatrix.errors import ParameterError

S, A = sympy.symbols("s a", positive=True)
GENS = (S, A)
VAR_NAMES = ("s", "a")


def _monomial_string(exp):
    factors = []
    for name, power in zip(VAR_NAMES, exp):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append(f"{name}^{power}")
    return "*".join(factors)


def _signed_term(coeff: Fraction, monomial: str, first: bool):
    sign = "-" if coeff < 0 else ("" if first else "+")
    magnitude = abs(coeff)
    if not monomial:
        return f"{sign}{magnitude}"
    if magnitude == 1:
        return f"{sign}{monomial}"
    return f"{sign}{magnitude}*{monomial}"


class BetaPoly:
    """
    A polynomial in (s, a) with exact rational coefficients. Hermite quantities only involve s.
    Instances are immutable; arithmetic returns new polynomials.
    """

    __slots__ = ("poly",)

    def __init__(self, value=0):
        if isinstance(value, BetaPoly):
            poly = value.poly
        elif isinstance(value, sympy.Poly):
            poly = sympy.Poly(value.as_expr(), *GENS, domain=sympy.QQ)
        else:
            try:
                poly = sympy.Poly(sympy.sympify(value), *GENS, domain=sympy.QQ)
            except (PolynomialError, sympy.SympifyError, CoercionFailed) as e:
                raise ParameterError(f"Not a rational polynomial in (s, a): {value!r}") from e
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("BetaPoly is immutable")

    @classmethod
    def s(cls):
        return cls(S)

    @classmethod
    def a(cls):
        return cls(A)

    @classmethod
    def from_terms(cls, terms: dict):
        """From {(i, j): coefficient} with coefficient an int or Fraction"""
        expr = sympy.Integer(0)
        for (i, j), c in terms.items():
            c = Fraction(c)
            expr += sympy.Rational(c.numerator, c.denominator) * S**i * A**j
        return cls(expr)

    def terms(self) -> dict:
        """Nonzero coefficients as {(power of s, power of a): Fraction}"""
        return {exp: Fraction(int(c.p), int(c.q)) for exp, c in self.poly.terms() if c != 0}

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def degree_s(self) -> int:
        return max((i for i, _ in self.terms()), default=0)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms()), default=0)

    @property
    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms().values())

    def evaluate(self, beta, a=None) -> float:
        """Value at s = beta/2 (and a), computed exactly then rounded once"""
        s = Fraction(beta) / 2
        total = Fraction(0)
        for (i, j), c in self.terms().items():
            if j and a is None:
                raise ParameterError(f"{self} depends on a; pass a value for it")
            total += c * s**i * (Fraction(a) ** j if j else 1)
        return float(total)

    def as_expr(self):
        return self.poly.as_expr()

    def to_json(self):
        terms = sorted(self.terms().items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        return {
            "vars": list(VAR_NAMES),
            "terms": [
                {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)} for exp, c in terms
            ],
        }

    @classmethod
    def from_json(cls, obj: dict):
        if list(obj.get("vars", [])) != list(VAR_NAMES):
            raise ParameterError(f"Expected vars {list(VAR_NAMES)}, got {obj.get('vars')}")
        return cls.from_terms({tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"])) for t in obj["terms"]})

    def to_string(self) -> str:
        """
        Compact rendering, highest total degree first.

        >>> (BetaPoly.s() ** 2 + BetaPoly.s() + 1).to_string()
        's^2+s+1'
        """
        terms = sorted(self.terms().items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        if not terms:
            return "0"
        return "".join(_signed_term(c, _monomial_string(exp), k == 0) for k, (exp, c) in enumerate(terms))

    def _coerce(self, other):
        return other if isinstance(other, BetaPoly) else BetaPoly(other)

    def __add__(self, other):
        return BetaPoly(self.poly + self._coerce(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return BetaPoly(self.poly - self._coerce(other).poly)

    def __rsub__(self, other):
        return BetaPoly(self._coerce(other).poly - self.poly)

    def __neg__(self):
        return BetaPoly(-self.poly)

    def __mul__(self, other):
        return BetaPoly(self.poly * self._coerce(other).poly)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return BetaPoly(self.poly**k)

    def __eq__(self, other):
        try:
            return self.poly == self._coerce(other).poly
        except ParameterError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms().items())))

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"BetaPoly({self.to_string()!r})"


def rising(x: BetaPoly, k: int) -> BetaPoly:
    """(x)_k = x (x+1) ... (x+k-1) for a polynomial x"""
    out = BetaPoly(1)
    for j in range(k):
        out = out * (x + j)
    return out


class ExpectedCharPoly:
    """E[det(yI - T)] as a monic polynomial in y with BetaPoly coefficients, lowest degree first"""

    def __init__(self, coeffs):
        coeffs = tuple(BetaPoly(c) for c in coeffs)
        if not coeffs or coeffs[-1] != 1:
            raise ParameterError("An expected characteristic polynomial must be monic in y")
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k) -> BetaPoly:
        return self.coeffs[k]

    def __eq__(self, other):
        return isinstance(other, ExpectedCharPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, beta, a=None):
        """Float coefficients at s = beta/2, lowest degree first"""
        return [c.evaluate(beta, a) for c in self.coeffs]

    def as_expr(self, y=None):
        y = sympy.Symbol("y") if y is None else y
        return sympy.Add(*(c.as_expr() * y**k for k, c in enumerate(self.coeffs)))

    def to_json(self):
        return {"vars": list(VAR_NAMES), "degree": self.degree, "coefficients": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict):
        return cls([BetaPoly.from_json(c) for c in obj["coefficients"]])

    def to_string(self) -> str:
        """
        >>> ExpectedCharPoly([0, -3 * BetaPoly.s(), 0, 1]).to_string()
        'y^3-3*s*y'
        """
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero:
                continue
            ypow = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
            terms = c.terms()
            if not ypow:
                text = c.to_string()
            elif c == 1:
                text = ypow
            elif c == -1:
                text = f"-{ypow}"
            elif len(terms) == 1:
                text = f"{c.to_string()}*{ypow}"
            else:
                text = f"({c.to_string()})*{ypow}"
            if parts and not text.startswith("-"):
                text = "+" + text
            parts.append(text)
        return "".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"ExpectedCharPoly({self.to_string()!r})"


__all__ = ["S", "A", "BetaPoly", "ExpectedCharPoly", "rising"]
