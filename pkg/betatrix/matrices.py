"""
Value types for the matrices handled by betatrix.

All types are batched: the last axis (last two for dense matrices) is the matrix
index and any leading axes are batch axes, so a stack of 10^4 tridiagonal 8x8
matrices is a single `TridiagonalSym` with `diag.shape == (10000, 8)`.

Index 0 is the top-left entry. Where the β-ensemble literature labels entries from
the bottom (a_n first), we store top-to-bottom; e.g. the Hermite subdiagonal entry
`subdiag[j]` has χ_{β(n-1-j)}/√2 law.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from betatrix.errors import ParameterError

MATRIX_KINDS = ("tridiagonal", "bidiagonal")


def _check_finite(name, *arrays):
    for arr in arrays:
        if not np.all(np.isfinite(arr)):
            raise ParameterError(f"{name} has nonfinite entries")


@dataclass(frozen=True)
class TridiagonalSym:
    """Real symmetric tridiagonal matrix given by its diagonal and (nonnegative) subdiagonal"""

    diag: np.ndarray
    subdiag: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=np.float64)
        subdiag = np.asarray(self.subdiag, dtype=np.float64)
        if diag.ndim == 0 or diag.shape[-1] < 1:
            raise ParameterError("A tridiagonal matrix needs at least one diagonal entry")
        if subdiag.shape != (*diag.shape[:-1], diag.shape[-1] - 1):
            expected = (*diag.shape[:-1], diag.shape[-1] - 1)
            raise ParameterError(f"Expected subdiag of shape {expected}, got {subdiag.shape}")
        _check_finite("TridiagonalSym", diag, subdiag)
        if np.any(subdiag < 0):
            raise ParameterError("Subdiagonal entries must be nonnegative")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "subdiag", subdiag)

    @property
    def n(self) -> int:
        return self.diag.shape[-1]

    @property
    def batch_shape(self) -> tuple:
        return self.diag.shape[:-1]

    @property
    def is_degenerate(self):
        """True where some subdiagonal entry is exactly zero (the matrix splits)"""
        return np.any(self.subdiag == 0, axis=-1)

    def __getitem__(self, idx):
        return TridiagonalSym(self.diag[idx], self.subdiag[idx])

    def __len__(self):
        if not self.batch_shape:
            raise TypeError("len() of an unbatched matrix")
        return self.batch_shape[0]

    def norm_bound(self):
        """Gershgorin bound on the spectral radius, max_i |a_i| + b_{i-1} + b_i"""
        pad = np.zeros((*self.batch_shape, 1))
        off = np.concatenate([pad, self.subdiag], axis=-1) + np.concatenate([self.subdiag, pad], axis=-1)
        return np.max(np.abs(self.diag) + off, axis=-1)

    def to_dense(self):
        n = self.n
        dense = np.zeros((*self.batch_shape, n, n))
        idx = np.arange(n)
        dense[..., idx, idx] = self.diag
        dense[..., idx[1:], idx[:-1]] = self.subdiag
        dense[..., idx[:-1], idx[1:]] = self.subdiag
        return dense

    def to_json(self):
        if self.batch_shape:
            return [self[i].to_json() for i in np.ndindex(*self.batch_shape)]
        return {"kind": "tridiagonal", "diag": self.diag.tolist(), "subdiag": self.subdiag.tolist()}


@dataclass(frozen=True)
class BidiagonalPos:
    """
    Lower bidiagonal matrix B with B[i, i] = diag[i] and B[i+1, i] = subdiag[i].
    Entries are nonnegative; a zero entry marks a rank-deficient (degenerate) factor.
    """

    diag: np.ndarray
    subdiag: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=np.float64)
        subdiag = np.asarray(self.subdiag, dtype=np.float64)
        if diag.ndim == 0 or diag.shape[-1] < 1:
            raise ParameterError("A bidiagonal matrix needs at least one diagonal entry")
        if subdiag.shape != (*diag.shape[:-1], diag.shape[-1] - 1):
            expected = (*diag.shape[:-1], diag.shape[-1] - 1)
            raise ParameterError(f"Expected subdiag of shape {expected}, got {subdiag.shape}")
        _check_finite("BidiagonalPos", diag, subdiag)
        if np.any(diag < 0) or np.any(subdiag < 0):
            raise ParameterError("Bidiagonal entries must be nonnegative")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "subdiag", subdiag)

    @property
    def m(self) -> int:
        return self.diag.shape[-1]

    @property
    def batch_shape(self) -> tuple:
        return self.diag.shape[:-1]

    @property
    def is_degenerate(self):
        return np.any(self.diag == 0, axis=-1) | np.any(self.subdiag == 0, axis=-1)

    def __getitem__(self, idx):
        return BidiagonalPos(self.diag[idx], self.subdiag[idx])

    def to_dense(self):
        m = self.m
        dense = np.zeros((*self.batch_shape, m, m))
        idx = np.arange(m)
        dense[..., idx, idx] = self.diag
        dense[..., idx[1:], idx[:-1]] = self.subdiag
        return dense

    def to_json(self):
        if self.batch_shape:
            return [self[i].to_json() for i in np.ndindex(*self.batch_shape)]
        return {"kind": "bidiagonal", "diag": self.diag.tolist(), "subdiag": self.subdiag.tolist()}


@dataclass(frozen=True)
class DenseSymmetric:
    """Dense real symmetric or complex Hermitian matrix (or a stack of them)"""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix)
        if matrix.ndim < 2 or matrix.shape[-1] != matrix.shape[-2]:
            raise ParameterError(f"Expected square matrices, got shape {matrix.shape}")
        _check_finite("DenseSymmetric", matrix)
        matrix = matrix.astype(np.complex128 if np.iscomplexobj(matrix) else np.float64)
        adjoint = np.conj(np.swapaxes(matrix, -1, -2))
        scale = max(np.max(np.abs(matrix), initial=0.0), 1.0)
        if not np.allclose(matrix, adjoint, rtol=0, atol=1e-12 * scale):
            raise ParameterError("Matrix is not symmetric/Hermitian")
        object.__setattr__(self, "matrix", matrix)

    @property
    def n(self) -> int:
        return self.matrix.shape[-1]

    @property
    def field(self) -> str:
        return "complex" if np.iscomplexobj(self.matrix) else "real"

    @property
    def batch_shape(self) -> tuple:
        return self.matrix.shape[:-2]

    def __getitem__(self, idx):
        return DenseSymmetric(self.matrix[idx])


@dataclass(frozen=True)
class Spectrum:
    """Strictly increasing eigenvalues and the nonnegative, unit-norm first row q of the eigenvector matrix"""

    eigenvalues: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        eigenvalues = np.asarray(self.eigenvalues, dtype=np.float64)
        q = np.asarray(self.q, dtype=np.float64)
        if eigenvalues.shape != q.shape:
            raise ParameterError(f"Shape mismatch {eigenvalues.shape=} {q.shape=}")
        if np.any(np.diff(eigenvalues, axis=-1) <= 0):
            raise ParameterError("Eigenvalues must be strictly increasing")
        if np.any(q < 0):
            raise ParameterError("q must be nonnegative")
        if not np.allclose(np.sum(q**2, axis=-1), 1.0, rtol=0, atol=1e-10):
            raise ParameterError("q must have unit Euclidean norm")
        object.__setattr__(self, "eigenvalues", eigenvalues)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[-1]

    def __getitem__(self, idx):
        return Spectrum(self.eigenvalues[idx], self.q[idx])


def matrix_from_json(obj: dict):
    """Decode a record of the shared matrix schema"""
    kind = obj.get("kind")
    if kind == "tridiagonal":
        return TridiagonalSym(np.array(obj["diag"], dtype=np.float64), np.array(obj["subdiag"], dtype=np.float64))
    elif kind == "bidiagonal":
        return BidiagonalPos(np.array(obj["diag"], dtype=np.float64), np.array(obj["subdiag"], dtype=np.float64))
    raise ParameterError(f"Unknown matrix kind {kind!r}, expected one of {MATRIX_KINDS}")


__all__ = ["TridiagonalSym", "BidiagonalPos", "DenseSymmetric", "Spectrum", "matrix_from_json"]
