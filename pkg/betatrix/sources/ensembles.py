"""
Random matrix constructions for the β-Hermite and β-Laguerre ensembles, and the dense
classical ensembles used to cross-validate them.

    Hermite:   H_β ~ tridiagonal, diag N(0, 1), subdiag χ_{(n-1)β}/√2, ..., χ_β/√2 (top to bottom)
    Laguerre:  B_β ~ lower bidiagonal, diag χ_{2a}, χ_{2a-β}, ..., χ_{2a-β(m-1)},
               subdiag χ_{β(m-1)}, ..., χ_β; the ensemble matrix is T = B Bᵀ

The Laguerre parameter a is continuous; it only has to exceed (β/2)(m-1).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from betatrix.buffers import DataBuffer
from betatrix.errors import ParameterError
from betatrix.matrices import BidiagonalPos, DenseSymmetric, TridiagonalSym
from betatrix.sources.base import EnsembleSource
from betatrix.sources.streams import ChiLaw, RandomStream, chi, gaussian

logger = logging.getLogger(__name__)

DENSE_KINDS = ("GOE", "GUE")
FIELDS = ("real", "complex")


@dataclass(frozen=True)
class HermiteParams:
    beta: float
    n: int

    def __post_init__(self):
        if not self.beta > 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n}")


@dataclass(frozen=True)
class LaguerreParams:
    beta: float
    m: int
    a: float
    p: float = field(init=False)

    def __post_init__(self):
        if not self.beta > 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if int(self.m) != self.m or self.m < 1:
            raise ParameterError(f"m must be a positive integer, got {self.m}")
        bound = self.beta / 2 * (self.m - 1)
        if not self.a > bound:
            raise ParameterError(
                f"Laguerre parameter a={self.a} must exceed (beta/2)(m-1)={bound}: "
                f"the chi law of the last diagonal entry would have dof 2a - beta(m-1) = {2 * self.a - 2 * bound}"
            )
        object.__setattr__(self, "p", 1 + self.beta / 2 * (self.m - 1))


def _batch_size(size):
    if size is None:
        return ()
    return (size,) if isinstance(size, (int, np.integer)) else tuple(size)


def hermite_subdiag_dofs(p: HermiteParams):
    """χ degrees of freedom of the subdiagonal, top to bottom: (n-1)β, ..., β"""
    return p.beta * np.arange(p.n - 1, 0, -1, dtype=np.float64)


def laguerre_factor_dofs(p: LaguerreParams):
    """χ degrees of freedom of the bidiagonal factor (diag, subdiag), top to bottom"""
    diag_dof = 2 * p.a - p.beta * np.arange(p.m, dtype=np.float64)
    subdiag_dof = p.beta * np.arange(p.m - 1, 0, -1, dtype=np.float64)
    return diag_dof, subdiag_dof


def sample_hermite(p: HermiteParams, stream: RandomStream, size=None) -> TridiagonalSym:
    """Sample the tridiagonal β-Hermite model; `size` adds leading batch axes"""
    shape = _batch_size(size)
    diag = gaussian(stream, size=(*shape, p.n))
    if p.n == 1:
        return TridiagonalSym(diag, np.zeros((*shape, 0)))
    subdiag = chi(stream, ChiLaw(hermite_subdiag_dofs(p)), size=(*shape, p.n - 1)) / np.sqrt(2)
    return TridiagonalSym(diag, subdiag)


def sample_laguerre_factor(p: LaguerreParams, stream: RandomStream, size=None) -> BidiagonalPos:
    """Sample the bidiagonal β-Laguerre factor B_β"""
    shape = _batch_size(size)
    diag_dof, subdiag_dof = laguerre_factor_dofs(p)
    diag = chi(stream, ChiLaw(diag_dof), size=(*shape, p.m))
    if p.m == 1:
        return BidiagonalPos(diag, np.zeros((*shape, 0)))
    subdiag = chi(stream, ChiLaw(subdiag_dof), size=(*shape, p.m - 1))
    return BidiagonalPos(diag, subdiag)


def laguerre_from_factor(B: BidiagonalPos) -> TridiagonalSym:
    """
    T = B Bᵀ from the closed-form entry relations, never forming a dense product:
    T[0, 0] = x_0², T[i, i] = x_i² + y_{i-1}², T[i+1, i] = y_i x_i
    """
    x, y = B.diag, B.subdiag
    diag = x**2
    diag[..., 1:] += y**2
    return TridiagonalSym(diag, y * x[..., :-1])


def sample_dense_classical(kind: str, n: int, stream: RandomStream, size=None) -> DenseSymmetric:
    """
    GOE: (G + Gᵀ)/2 with real standard Gaussian G, i.e. diagonal N(0, 1) and off-diagonal N(0, 1/2).
    GUE: (G + G*)/2 with complex G whose real and imaginary parts are standard Gaussians.
    """
    if kind not in DENSE_KINDS:
        raise ParameterError(f"Unknown dense ensemble {kind!r}, expected one of {DENSE_KINDS}")
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n}")
    shape = (*_batch_size(size), n, n)
    g = gaussian(stream, size=shape)
    if kind == "GUE":
        g = g + 1j * gaussian(stream, size=shape)
    return DenseSymmetric((g + np.conj(np.swapaxes(g, -1, -2))) / 2)


def sample_dense_wishart(field: str, m: int, n: int, stream: RandomStream, size=None) -> np.ndarray:
    """Dense m x n Gaussian matrix G whose Gram matrix G G* is real (field="real") or complex Wishart"""
    if field not in FIELDS:
        raise ParameterError(f"Unknown field {field!r}, expected one of {FIELDS}")
    if m < 1 or n < m:
        raise ParameterError(f"Expected 1 <= m <= n, got {m=} {n=}")
    shape = (*_batch_size(size), m, n)
    g = gaussian(stream, size=shape)
    if field == "complex":
        g = g + 1j * gaussian(stream, size=shape)
    return g


class HermiteEnsemble(EnsembleSource):
    """Tridiagonal β-Hermite ensemble, signals "diag" and "subdiag" """

    def __init__(self, beta: float, n: int):
        self.hermite_params = HermiteParams(beta, n)

    @property
    def params(self):
        return {"beta": self.hermite_params.beta, "n": self.hermite_params.n}

    def sample(self, stream, size):
        T = sample_hermite(self.hermite_params, stream, size)
        return DataBuffer(data={"diag": T.diag, "subdiag": T.subdiag})


class LaguerreEnsemble(EnsembleSource):
    """
    Bidiagonal β-Laguerre ensemble. Produces the factor ("factor_diag", "factor_subdiag")
    and the tridiagonal T = B Bᵀ ("diag", "subdiag").
    """

    def __init__(self, beta: float, m: int, a: float):
        self.laguerre_params = LaguerreParams(beta, m, a)

    @property
    def params(self):
        return {"beta": self.laguerre_params.beta, "m": self.laguerre_params.m, "a": self.laguerre_params.a}

    def sample(self, stream, size):
        B = sample_laguerre_factor(self.laguerre_params, stream, size)
        T = laguerre_from_factor(B)
        return DataBuffer(
            data={"factor_diag": B.diag, "factor_subdiag": B.subdiag, "diag": T.diag, "subdiag": T.subdiag}
        )


class GaussianEnsemble(EnsembleSource):
    """Dense GOE or GUE matrices, signal "matrix" """

    def __init__(self, kind: str, n: int):
        if kind not in DENSE_KINDS:
            raise ParameterError(f"Unknown dense ensemble {kind!r}, expected one of {DENSE_KINDS}")
        self.kind = kind
        self.n = n

    @property
    def params(self):
        return {"kind": self.kind, "n": self.n}

    def sample(self, stream, size):
        return DataBuffer(data={"matrix": sample_dense_classical(self.kind, self.n, stream, size).matrix})


class WishartEnsemble(EnsembleSource):
    """Dense m x n real or complex Gaussian matrices, signal "matrix" """

    def __init__(self, field: str, m: int, n: int):
        if field not in FIELDS:
            raise ParameterError(f"Unknown field {field!r}, expected one of {FIELDS}")
        self.field = field
        self.m = m
        self.n = n

    @property
    def params(self):
        return {"field": self.field, "m": self.m, "n": self.n}

    def sample(self, stream, size):
        return DataBuffer(data={"matrix": sample_dense_wishart(self.field, self.m, self.n, stream, size)})


__all__ = [
    "HermiteParams",
    "LaguerreParams",
    "hermite_subdiag_dofs",
    "laguerre_factor_dofs",
    "sample_hermite",
    "sample_laguerre_factor",
    "laguerre_from_factor",
    "sample_dense_classical",
    "sample_dense_wishart",
    "HermiteEnsemble",
    "LaguerreEnsemble",
    "GaussianEnsemble",
    "WishartEnsemble",
]
