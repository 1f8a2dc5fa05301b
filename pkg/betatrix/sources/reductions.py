"""
Householder reductions linking the dense classical ensembles to the sparse models:
symmetric/Hermitian A -> tridiagonal T, and rectangular G -> lower bidiagonal B.

Both work on stacks of matrices (leading batch axes). Signs and phases left on the
off-diagonals by the reflectors are absorbed into a diagonal unitary similarity, so the
results always have nonnegative real off-diagonals.
"""
from __future__ import annotations

import logging

import numpy as np

from betatrix.errors import ParameterError
from betatrix.matrices import BidiagonalPos, DenseSymmetric, TridiagonalSym

logger = logging.getLogger(__name__)


def _reflector(x: np.ndarray):
    """
    Householder vector v and factor tau with (I - tau v v*) x = -phase(x_0) ||x|| e_1.
    When x is already a multiple of e_1 the reflection is skipped (tau = 0).
    """
    alpha = np.linalg.norm(x, axis=-1)
    x0 = x[..., 0]
    abs_x0 = np.abs(x0)
    phase = np.where(abs_x0 > 0, x0 / np.where(abs_x0 > 0, abs_x0, 1), 1)
    v = x.copy()
    v[..., 0] = x0 + phase * alpha
    vnorm2 = np.sum(np.abs(v) ** 2, axis=-1)
    tail = np.sum(np.abs(x[..., 1:]) ** 2, axis=-1)
    skip = (tail == 0) | (vnorm2 == 0)
    tau = np.where(skip, 0.0, 2.0 / np.where(skip, 1.0, vnorm2))
    return v, tau


def _apply_left(M, v, tau):
    """M <- (I - tau v v*) M"""
    w = np.einsum("...i,...ij->...j", np.conj(v), M)
    M -= tau[..., None, None] * v[..., :, None] * w[..., None, :]


def _apply_right(M, v, tau):
    """M <- M (I - tau v v*)"""
    u = np.einsum("...ij,...j->...i", M, v)
    M -= tau[..., None, None] * u[..., :, None] * np.conj(v)[..., None, :]


def householder_tridiagonalize(A: DenseSymmetric) -> TridiagonalSym:
    """
    Reduce A to a real symmetric tridiagonal T = H_{n-2} ... H_1 A H_1 ... H_{n-2}
    with reflectors H = I - 2uu*/(u*u). Eigenvalues are preserved.
    """
    work = A.matrix.copy()
    n = A.n
    for k in range(n - 2):
        v, tau = _reflector(work[..., k + 1 :, k])
        if not np.any(tau):
            logger.debug(f"Column {k} already reduced, skipping reflection")
            continue
        _apply_left(work[..., k + 1 :, :], v, tau)
        _apply_right(work[..., :, k + 1 :], v, tau)

    idx = np.arange(n)
    diag = np.real(work[..., idx, idx])
    subdiag = np.abs(work[..., idx[1:], idx[:-1]])
    return TridiagonalSym(diag, subdiag)


def golub_kahan_bidiagonalize(G: np.ndarray) -> BidiagonalPos:
    """
    Reduce an m x n matrix (m <= n) to lower bidiagonal form B = U* G V (first m columns),
    alternating a right reflection that zeros row i beyond the diagonal with a left
    reflection that zeros column i below the subdiagonal. Singular values are preserved;
    a rank-deficient G yields zero entries in B.
    """
    G = np.asarray(G)
    if G.ndim < 2:
        raise ParameterError(f"Expected a matrix, got shape {G.shape}")
    m, n = G.shape[-2:]
    if m > n:
        raise ParameterError(f"Expected m <= n, got {m=} {n=}")
    work = G.astype(np.complex128 if np.iscomplexobj(G) else np.float64, copy=True)
    for i in range(m):
        v, tau = _reflector(np.conj(work[..., i, i:]))
        _apply_right(work[..., i:, i:], v, tau)
        if i + 1 < m:
            v, tau = _reflector(work[..., i + 1 :, i])
            _apply_left(work[..., i + 1 :, i:], v, tau)

    idx = np.arange(m)
    diag = np.abs(work[..., idx, idx])
    subdiag = np.abs(work[..., idx[1:], idx[:-1]])
    B = BidiagonalPos(diag, subdiag)
    if np.any(B.is_degenerate):
        logger.warning(f"Rank-deficient input: {np.sum(B.is_degenerate)} bidiagonal factor(s) with zero entries")
    return B


__all__ = ["householder_tridiagonalize", "golub_kahan_bidiagonalize"]
