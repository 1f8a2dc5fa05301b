"""
Closed-form constants and identities of the β-Hermite, β-Laguerre and β-Jacobi eigenvalue laws.

    Hermite:   c_H ∏_{i<j} |λ_i - λ_j|^β exp(-Σ λ_i² / 2)                 on ℝ^n
    Laguerre:  c_L ∏_{i<j} |λ_i - λ_j|^β ∏ λ_i^{a-p} exp(-Σ λ_i / 2)        on (0, ∞)^m
    Jacobi:    c_J ∏_{i<j} |λ_i - λ_j|^β ∏ λ_i^{a1-p} (1 - λ_i)^{a2-p}      on (0, 1)^m

with p = 1 + (β/2)(m-1). Densities are for unordered eigenvalues; the ordered density
carries an extra factor n!.

Everything is evaluated in log space through `scipy.special.gammaln`, since the Gamma
products overflow already for moderate sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
import sympy
from scipy.special import gammaln

from betatrix.errors import MomentMismatchError, ParameterError
from betatrix.sources.ensembles import HermiteParams, LaguerreParams
from betatrix.spectral import vandermonde_direct

DENSITY_KINDS = ("Hermite", "Laguerre", "Jacobi")
POLYNOMIAL_FAMILIES = ("HermiteProbabilists", "HermitePhysicists", "GeneralizedLaguerre")
LOG_2PI = math.log(2 * math.pi)


@dataclass(frozen=True)
class JacobiParams:
    beta: float
    m: int
    a1: float
    a2: float
    p: float = field(init=False)

    def __post_init__(self):
        if not self.beta > 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if int(self.m) != self.m or self.m < 1:
            raise ParameterError(f"m must be a positive integer, got {self.m}")
        bound = self.beta / 2 * (self.m - 1)
        if not (self.a1 > bound and self.a2 > bound):
            raise ParameterError(f"Jacobi parameters a1={self.a1}, a2={self.a2} must exceed (beta/2)(m-1)={bound}")
        object.__setattr__(self, "p", 1 + self.beta / 2 * (self.m - 1))


Params = Union[HermiteParams, LaguerreParams, JacobiParams]


def _check_beta(beta, allow_zero=False):
    if not (beta > 0 or (allow_zero and beta == 0)):
        raise ParameterError(f"beta must be {'nonnegative' if allow_zero else 'positive'}, got {beta}")


def _check_size(n, name="n"):
    if int(n) != n or n < 1:
        raise ParameterError(f"{name} must be a positive integer, got {n}")


def _check_gamma_args(*args):
    """Every argument of a Gamma factor has to stay off the poles"""
    for arg in args:
        if not np.all(np.asarray(arg) > 0):
            raise ParameterError(f"Gamma pole: nonpositive argument {np.min(arg)}")


def _hermite_gamma_sum(beta, n):
    """Σ_j log Γ(1 + β/2) - log Γ(1 + βj/2), shared by all three constants"""
    j = np.arange(1, n + 1)
    return float(np.sum(gammaln(1 + beta / 2) - gammaln(1 + beta * j / 2)))


def log_c_hermite(beta: float, n: int) -> float:
    """log c_H = -(n/2) log 2π + Σ_{j=1}^n log Γ(1+β/2) - log Γ(1+βj/2)"""
    _check_beta(beta, allow_zero=True)
    _check_size(n)
    return -n / 2 * LOG_2PI + _hermite_gamma_sum(beta, n)


def log_c_laguerre(beta: float, m: int, a: float) -> float:
    """log c_L = -ma log 2 + Σ_{j=1}^m log Γ(1+β/2) - log Γ(1+βj/2) - log Γ(a - (β/2)(m-j))"""
    _check_beta(beta, allow_zero=True)
    _check_size(m, "m")
    shifted = a - beta / 2 * (m - np.arange(1, m + 1))
    _check_gamma_args(shifted)
    return -m * a * math.log(2) + _hermite_gamma_sum(beta, m) - float(np.sum(gammaln(shifted)))


def log_c_jacobi(beta: float, m: int, a1: float, a2: float) -> float:
    """
    log c_J with
        c_J = ∏_{j=1}^m Γ(1+β/2) Γ(a1+a2-(β/2)(m-j)) / (Γ(1+βj/2) Γ(a1-(β/2)(m-j)) Γ(a2-(β/2)(m-j)))
    """
    _check_beta(beta, allow_zero=True)
    _check_size(m, "m")
    offset = beta / 2 * (m - np.arange(1, m + 1))
    _check_gamma_args(a1 - offset, a2 - offset)
    gammas = gammaln(a1 + a2 - offset) - gammaln(a1 - offset) - gammaln(a2 - offset)
    return _hermite_gamma_sum(beta, m) + float(np.sum(gammas))


def log_c_q(beta: float, n: int) -> float:
    """log c_q = log 2^{n-1} Γ(βn/2) / Γ(β/2)^n, normalizer of ∏ q_i^{β-1} on the positive unit sphere"""
    _check_beta(beta)
    _check_size(n)
    return (n - 1) * math.log(2) + float(gammaln(beta * n / 2) - n * gammaln(beta / 2))


def _log_vandermonde_power(lam, beta):
    if beta == 0:
        return np.zeros(np.shape(lam)[:-1])
    with np.errstate(invalid="ignore"):
        return beta * vandermonde_direct(lam).log_abs


def log_density_hermite(lam, beta: float):
    """Log of the unordered β-Hermite eigenvalue density; coinciding eigenvalues give -inf"""
    lam = np.asarray(lam, dtype=np.float64)
    if not np.all(np.isfinite(lam)):
        raise ParameterError("Eigenvalues must be finite")
    return log_c_hermite(beta, lam.shape[-1]) + _log_vandermonde_power(lam, beta) - np.sum(lam**2, axis=-1) / 2


def log_density_laguerre(lam, beta: float, a: float, m: int = None):
    """Log of the unordered β-Laguerre eigenvalue density; all eigenvalues must be positive"""
    lam = np.asarray(lam, dtype=np.float64)
    m = lam.shape[-1] if m is None else m
    if lam.shape[-1] != m:
        raise ParameterError(f"Expected {m} eigenvalues, got {lam.shape[-1]}")
    if not np.all(lam > 0) or not np.all(np.isfinite(lam)):
        raise ParameterError("Laguerre eigenvalues must be positive and finite")
    p = 1 + beta / 2 * (m - 1)
    log_lam = np.log(lam)
    return (
        log_c_laguerre(beta, m, a)
        + _log_vandermonde_power(lam, beta)
        + (a - p) * np.sum(log_lam, axis=-1)
        - np.sum(lam, axis=-1) / 2
    )


def log_density_jacobi(lam, beta: float, a1: float, a2: float, m: int = None):
    """Log of the unordered β-Jacobi eigenvalue density on (0, 1)^m"""
    lam = np.asarray(lam, dtype=np.float64)
    m = lam.shape[-1] if m is None else m
    if lam.shape[-1] != m:
        raise ParameterError(f"Expected {m} eigenvalues, got {lam.shape[-1]}")
    if not (np.all(lam > 0) and np.all(lam < 1)):
        raise ParameterError("Jacobi eigenvalues must lie in (0, 1)")
    p = 1 + beta / 2 * (m - 1)
    return (
        log_c_jacobi(beta, m, a1, a2)
        + _log_vandermonde_power(lam, beta)
        + (a1 - p) * np.sum(np.log(lam), axis=-1)
        + (a2 - p) * np.sum(np.log1p(-lam), axis=-1)
    )


@dataclass(frozen=True)
class EnsembleDensity:
    """Joint eigenvalue density of an ensemble, with its log normalization constant"""

    kind: str
    params: Params
    log_norm: float = field(init=False)

    def __post_init__(self):
        expected = {"Hermite": HermiteParams, "Laguerre": LaguerreParams, "Jacobi": JacobiParams}
        if self.kind not in expected:
            raise ParameterError(f"Unknown density kind {self.kind!r}, expected one of {DENSITY_KINDS}")
        if not isinstance(self.params, expected[self.kind]):
            raise ParameterError(f"{self.kind} density needs {expected[self.kind].__name__}, got {self.params!r}")
        object.__setattr__(self, "log_norm", log_norm(self.params))

    @classmethod
    def from_params(cls, params: Params):
        kind = {HermiteParams: "Hermite", LaguerreParams: "Laguerre", JacobiParams: "Jacobi"}[type(params)]
        return cls(kind, params)

    @property
    def size(self) -> int:
        return self.params.n if self.kind == "Hermite" else self.params.m

    def __call__(self, lam):
        """Log-density at (batches of) eigenvalue vectors"""
        p = self.params
        if self.kind == "Hermite":
            return log_density_hermite(lam, p.beta)
        elif self.kind == "Laguerre":
            return log_density_laguerre(lam, p.beta, p.a, p.m)
        return log_density_jacobi(lam, p.beta, p.a1, p.a2, p.m)


def log_norm(params: Params) -> float:
    """Log normalization constant for any of the three parameter types"""
    if isinstance(params, HermiteParams):
        return log_c_hermite(params.beta, params.n)
    elif isinstance(params, LaguerreParams):
        return log_c_laguerre(params.beta, params.m, params.a)
    elif isinstance(params, JacobiParams):
        return log_c_jacobi(params.beta, params.m, params.a1, params.a2)
    raise ParameterError(f"Unsupported parameters {params!r}")


def selberg_hermite(beta: float, n: int) -> float:
    """log ∫_{ℝ^n} |Δ(λ)|^β exp(-Σλ²/2) dλ = -log c_H"""
    return -log_c_hermite(beta, n)


def selberg_laguerre(beta: float, a: float, m: int) -> float:
    """log ∫_{(0,∞)^m} |Δ(λ)|^β ∏ λ^{a-p} exp(-Σλ/2) dλ = -log c_L"""
    return -log_c_laguerre(beta, m, a)


def selberg_jacobi(beta: float, a1: float, a2: float, m: int) -> float:
    """log ∫_{(0,1)^m} |Δ(λ)|^β ∏ λ^{a1-p} (1-λ)^{a2-p} dλ = -log c_J"""
    return -log_c_jacobi(beta, m, a1, a2)


def rising_factorial(x, k: int):
    """
    (x)_k = x (x+1) ... (x+k-1), exact for int, Fraction and sympy inputs.

    >>> rising_factorial(2, 3)
    24
    """
    if int(k) != k or k < 0:
        raise ParameterError(f"Rising factorial order must be a nonnegative integer, got {k}")
    factors = [x + j for j in range(int(k))]
    if any(f == 0 for f in factors):
        raise ParameterError(f"Rising factorial ({x})_{k} hits a Gamma pole")
    return math.prod(factors)


def log_rising_factorial(x: float, k: int) -> float:
    """log (x)_k as a sum of logs; all factors must be positive"""
    if int(k) != k or k < 0:
        raise ParameterError(f"Rising factorial order must be a nonnegative integer, got {k}")
    factors = x + np.arange(int(k), dtype=np.float64)
    if np.any(factors <= 0):
        raise ParameterError(f"Rising factorial ({x})_{k} has a nonpositive factor")
    return float(np.sum(np.log(factors)))


def _shifted(params: Params, k: int) -> Params:
    """Parameters of the ensemble whose density is D(λ)^k times the original one"""
    if isinstance(params, HermiteParams):
        return HermiteParams(params.beta + 2 * k, params.n)
    shift = k * (params.m - 1)
    if isinstance(params, LaguerreParams):
        return LaguerreParams(params.beta + 2 * k, params.m, params.a + shift)
    return JacobiParams(params.beta + 2 * k, params.m, params.a1 + shift, params.a2 + shift)


def _check_moment_order(k):
    if int(k) != k or k < 0:
        raise ParameterError(f"Discriminant moment order must be a nonnegative integer, got {k}")


def discriminant_moment_gamma_ratio(kind: str, params: Params, k: int) -> float:
    """log E[D(λ)^k], D = Δ², as the ratio c(β, a) / c(β + 2k, a + k(m-1)) of normalization constants"""
    _check_moment_order(k)
    EnsembleDensity(kind, params)
    return log_norm(params) - log_norm(_shifted(params, k))


def discriminant_moment_product(kind: str, params: Params, k: int) -> float:
    """
    log E[D(λ)^k], D = Δ², from the rising-factorial products

        Hermite:   ∏_j (1+γj)_{kj} / (1+γ)_k
        Laguerre:  2^{km(m-1)} ∏_j (1+γj)_{kj} (a-γ(m-j))_{k(j-1)} / (1+γ)_k
        Jacobi:    ∏_j (1+γj)_{kj} (a1-γ(m-j))_{k(j-1)} (a2-γ(m-j))_{k(j-1)}
                       / ((1+γ)_k (a1+a2-γ(m-j))_{k(m+j-2)})

    with γ = β/2 and j = 1..n (or m).
    """
    _check_moment_order(k)
    density = EnsembleDensity(kind, params)
    gamma = params.beta / 2
    size = density.size
    total = 0.0
    for j in range(1, size + 1):
        total += log_rising_factorial(1 + gamma * j, k * j) - log_rising_factorial(1 + gamma, k)
        if kind == "Laguerre":
            total += log_rising_factorial(params.a - gamma * (size - j), k * (j - 1))
        elif kind == "Jacobi":
            offset = gamma * (size - j)
            total += log_rising_factorial(params.a1 - offset, k * (j - 1))
            total += log_rising_factorial(params.a2 - offset, k * (j - 1))
            total -= log_rising_factorial(params.a1 + params.a2 - offset, k * (size + j - 2))
    if kind == "Laguerre":
        total += k * size * (size - 1) * math.log(2)
    return total


def discriminant_moment(kind: str, params: Params, k: int) -> float:
    """log E[D(λ)^k], from the rising-factorial products, cross-checked against the Gamma-ratio form"""
    product = discriminant_moment_product(kind, params, k)
    ratio = discriminant_moment_gamma_ratio(kind, params, k)
    if not math.isclose(product, ratio, rel_tol=1e-10, abs_tol=1e-10):
        raise MomentMismatchError(f"Discriminant moment forms disagree for {params}, k={k}: {product} != {ratio}")
    return product


@dataclass(frozen=True)
class ClassicalPolynomial:
    """
    A classical orthogonal polynomial normalized to be monic. `coeffs[k]` is the
    coefficient of y^k (exact sympy numbers, or expressions for symbolic parameters).
    """

    family: str
    degree: int
    coeffs: tuple
    alpha: object = None

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1 or sympy.simplify(self.coeffs[-1] - 1) != 0:
            raise ParameterError(f"Expected {self.degree + 1} coefficients with leading coefficient 1")

    def as_expr(self, y=None):
        y = sympy.Symbol("y") if y is None else y
        return sympy.Add(*(c * y**k for k, c in enumerate(self.coeffs)))

    def to_numpy(self, **values):
        """Float coefficients, lowest degree first, after substituting named symbols"""
        subs = {sympy.Symbol(name, positive=True): value for name, value in values.items()}
        return np.array([float(sympy.sympify(c).subs(subs)) for c in self.coeffs])


def _exact(value):
    if isinstance(value, float):
        return sympy.Rational(repr(value))
    return sympy.sympify(value)


def _hermite_probabilists(n, x):
    """He_0 = 1, He_1 = x, He_k = x He_{k-1} - (k-1) He_{k-2}"""
    prev, cur = sympy.Integer(0), sympy.Integer(1)
    for k in range(1, n + 1):
        prev, cur = cur, sympy.expand(x * cur - (k - 1) * prev)
    return cur


def classical_monic(family: str, n: int, alpha=None, scale=1) -> ClassicalPolynomial:
    """
    The monic multiple of F_n(y / scale) for the family F, as a polynomial in y.

    HermiteProbabilists uses He_k = x He_{k-1} - (k-1) He_{k-2}; HermitePhysicists and
    GeneralizedLaguerre (parameter alpha) come from sympy's exact orthogonal polynomials.
    With scale=2 the Laguerre case gives the monic form in y under y = 2z, e.g.
    L_1^α -> y - 2(1 + α).
    """
    if family not in POLYNOMIAL_FAMILIES:
        raise ParameterError(f"Unknown family {family!r}, expected one of {POLYNOMIAL_FAMILIES}")
    if int(n) != n or n < 0:
        raise ParameterError(f"Degree must be a nonnegative integer, got {n}")
    x, y = sympy.Symbol("x"), sympy.Symbol("y")
    if family == "HermiteProbabilists":
        expr = _hermite_probabilists(n, x)
    elif family == "HermitePhysicists":
        expr = sympy.hermite(n, x)
    else:
        if alpha is None:
            raise ParameterError("GeneralizedLaguerre needs alpha")
        alpha = _exact(alpha)
        expr = sympy.assoc_laguerre(n, alpha, x)
    expr = sympy.expand(sympy.sympify(expr).subs(x, y / _exact(scale)))
    coeffs = sympy.Poly(expr, y).all_coeffs()[::-1]
    lead = coeffs[-1]
    return ClassicalPolynomial(family, n, tuple(sympy.simplify(c / lead) for c in coeffs), alpha)


def semicircle_density(t):
    """(1/π) √(2 - t²) on [-√2, √2], the limit of eigenvalues scaled by 1/√(βn)"""
    t = np.asarray(t, dtype=np.float64)
    return np.sqrt(np.clip(2 - t**2, 0, None)) / np.pi


def semicircle_cdf(t):
    """1/2 + t√(2-t²)/(2π) + arcsin(t/√2)/π, clipped to [0, 1] outside the support"""
    t = np.clip(np.asarray(t, dtype=np.float64), -math.sqrt(2), math.sqrt(2))
    return 0.5 + t * np.sqrt(np.clip(2 - t**2, 0, None)) / (2 * np.pi) + np.arcsin(t / math.sqrt(2)) / np.pi


def charpoly_scaling_report(n: int, beta: float = 2.0, a: float = None) -> dict:
    """
    Monic coefficients (lowest degree first) of the scaled classical polynomials that the
    expected characteristic polynomials are compared against. The three-term recurrence gives

        Hermite:   E[P_n](y) ∝ H_n(y / √β)                 (= s^{n/2} He_n(y / √s), s = β/2)
        Laguerre:  E[P_n](y) ∝ L_n^{2a/β - n}(y / β)

    whereas the literature statement uses the arguments y / √(2β) and y / (2β). Both
    variants are returned with their largest coefficient difference.
    """
    _check_beta(beta)
    _check_size(n)
    derived = classical_monic("HermitePhysicists", n, scale=sympy.sqrt(_exact(beta))).to_numpy()
    stated = classical_monic("HermitePhysicists", n, scale=sympy.sqrt(2 * _exact(beta))).to_numpy()
    report = {
        "n": n,
        "beta": beta,
        "hermite": {
            "derived": derived.tolist(),
            "stated": stated.tolist(),
            "max_abs_difference": float(np.max(np.abs(derived - stated))),
        },
    }
    if a is not None:
        LaguerreParams(beta, n, a)
        alpha = 2 * _exact(a) / _exact(beta) - n
        derived = classical_monic("GeneralizedLaguerre", n, alpha, scale=_exact(beta)).to_numpy()
        stated = classical_monic("GeneralizedLaguerre", n, alpha, scale=2 * _exact(beta)).to_numpy()
        report["laguerre"] = {
            "a": a,
            "derived": derived.tolist(),
            "stated": stated.tolist(),
            "max_abs_difference": float(np.max(np.abs(derived - stated))),
        }
    return report


__all__ = [
    "JacobiParams",
    "EnsembleDensity",
    "ClassicalPolynomial",
    "log_c_hermite",
    "log_c_laguerre",
    "log_c_jacobi",
    "log_c_q",
    "log_norm",
    "log_density_hermite",
    "log_density_laguerre",
    "log_density_jacobi",
    "selberg_hermite",
    "selberg_laguerre",
    "selberg_jacobi",
    "rising_factorial",
    "log_rising_factorial",
    "discriminant_moment",
    "discriminant_moment_gamma_ratio",
    "classical_monic",
    "semicircle_density",
    "semicircle_cdf",
    "charpoly_scaling_report",
]
