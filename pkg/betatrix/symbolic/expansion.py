"""
Sparse expansion of integer polynomials in formal matrix-entry variables.

A polynomial is a dict mapping exponent tuples to nonzero integer coefficients. Every
exponent tuple has the same length, one slot per variable; slot 0 is reserved for the
spectral variable y of the characteristic polynomial.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from typing import Dict, Tuple

from betatrix.errors import ResourceCapError

logger = logging.getLogger(__name__)

DEFAULT_MONOMIAL_CAP = 10**7

Monomials = Dict[Tuple[int, ...], int]


def _check_cap(count: int, cap: int):
    if count > cap:
        raise ResourceCapError(f"Expansion reached {count} monomials, above the cap of {cap}", count)


def constant(value: int, nvars: int) -> Monomials:
    return {(0,) * nvars: value} if value else {}


def variable(index: int, nvars: int, power: int = 1) -> Monomials:
    exp = [0] * nvars
    exp[index] = power
    return {tuple(exp): 1}


def add(p: Monomials, q: Monomials, scale: int = 1) -> Monomials:
    """p + scale * q"""
    out = dict(p)
    for exp, c in q.items():
        value = out.get(exp, 0) + scale * c
        if value:
            out[exp] = value
        else:
            out.pop(exp, None)
    return out


def multiply(p: Monomials, q: Monomials, cap: int = DEFAULT_MONOMIAL_CAP) -> Monomials:
    out = defaultdict(int)
    for exp_p, c_p in p.items():
        for exp_q, c_q in q.items():
            out[tuple(i + j for i, j in zip(exp_p, exp_q))] += c_p * c_q
        _check_cap(len(out), cap)
    return {exp: c for exp, c in out.items() if c}


def power(p: Monomials, k: int, nvars: int, cap: int = DEFAULT_MONOMIAL_CAP) -> Monomials:
    out = constant(1, nvars)
    for _ in range(k):
        out = multiply(out, p, cap)
    return out


def tridiagonal_charpoly(diag, sub2, nvars: int, cap: int = DEFAULT_MONOMIAL_CAP) -> Monomials:
    """
    det(yI - T) for a symmetric tridiagonal T whose diagonal entries `diag[i]` and squared
    subdiagonal entries `sub2[i]` are themselves polynomials, via the trailing-block recurrence
    P_k = (y - diag[n-k]) P_{k-1} - sub2[n-k] P_{k-2}.
    """
    n = len(diag)
    y = variable(0, nvars)
    p_prev, p = {}, constant(1, nvars)
    for k in range(1, n + 1):
        shifted = add(y, diag[n - k], scale=-1)
        p_next = multiply(shifted, p, cap)
        if k > 1:
            p_next = add(p_next, multiply(sub2[n - k], p_prev, cap), scale=-1)
        _check_cap(len(p_next), cap)
        p_prev, p = p, p_next
    logger.debug(f"Characteristic polynomial of size {n} expanded to {len(p)} monomials")
    return p


__all__ = [
    "DEFAULT_MONOMIAL_CAP",
    "Monomials",
    "constant",
    "variable",
    "add",
    "multiply",
    "power",
    "tridiagonal_charpoly",
]
