"""
Spectral kernels for symmetric tridiagonal matrices.

Conventions: P_k is the characteristic polynomial of the trailing (lower-right) k x k
block of T, so

    P_0 = 1,  P_1(y) = y - a_{n-1},  P_k(y) = (y - a_{n-k}) P_{k-1}(y) - b_{n-k}² P_{k-2}(y)

with a = T.diag and b = T.subdiag stored top to bottom. With this labelling the first
row q of the eigenvector matrix satisfies the Paige formula q_i² = |P_{n-1}(λ_i) / P_n'(λ_i)|,
and the Vandermonde determinant of the ordered eigenvalues is Δ(λ) = ∏_j b_j^{n-1-j} / ∏_i q_i.

Vandermonde and Jacobian values are returned as (sign, log|value|) pairs since Δ(λ)^β
under- or overflows already for moderate n.

All kernels accept leading batch axes.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.linalg import LinAlgError, eigvalsh_tridiagonal, solve_banded
from scipy.special import logsumexp

from betatrix.errors import DegenerateSpectrumError, ParameterError
from betatrix.matrices import BidiagonalPos, Spectrum, TridiagonalSym
from betatrix.sources.ensembles import laguerre_from_factor

logger = logging.getLogger(__name__)

EIGENVALUE_METHODS = ("bisection", "lapack")
DEGENERATE_GAP = 1e-12
_RESCALE_EXPONENT = 512
_SHIFT_RETRIES = 6


class SignedLog(NamedTuple):
    """A real number stored as sign and log-magnitude"""

    sign: float | np.ndarray
    log_abs: float | np.ndarray

    def value(self):
        return self.sign * np.exp(self.log_abs)


@dataclass(frozen=True)
class CharPolyEval:
    """
    P_0(y), ..., P_n(y) for the trailing-block characteristic polynomials, stored as
    mantissas `values[..., k]` with binary exponents `exponents[..., k]`.
    """

    values: np.ndarray
    exponents: np.ndarray

    def __getitem__(self, k):
        return np.ldexp(self.values[..., k], self.exponents[..., k])

    def as_array(self):
        return np.ldexp(self.values, self.exponents)

    @property
    def n(self) -> int:
        return self.values.shape[-1] - 1


def _points(T: TridiagonalSym, y):
    """Broadcast evaluation points to shape (*batch, K); returns the points and the output shape"""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim == 0:
        return np.broadcast_to(y, (*T.batch_shape, 1)), T.batch_shape
    if y.shape[:-1] != T.batch_shape:
        y = np.broadcast_to(y, (*T.batch_shape, y.shape[-1]))
    return y, y.shape


def _recurrence(T: TridiagonalSym, y: np.ndarray):
    """
    Run the three-term recurrence at points y of shape (*batch, K), rescaling by powers of two
    whenever the magnitudes leave [2^-512, 2^512]. Yields (k, P_k, exponent) for k = 0..n;
    P_k and P_{k-1} always share the binary exponent.
    """
    n = T.n
    diag = T.diag[..., None]
    sub2 = T.subdiag[..., None] ** 2
    p_prev, p = np.zeros(y.shape), np.ones(y.shape)
    exponent = np.zeros(y.shape, dtype=np.int64)
    yield 0, p, exponent
    for k in range(1, n + 1):
        shifted = y - diag[..., n - k, :]
        p_next = shifted * p if k == 1 else shifted * p - sub2[..., n - k, :] * p_prev
        p_prev, p = p, p_next

        _, e = np.frexp(np.maximum(np.abs(p), np.abs(p_prev)))
        e = np.where(np.abs(e) > _RESCALE_EXPONENT, e, 0)
        if np.any(e):
            p, p_prev = np.ldexp(p, -e), np.ldexp(p_prev, -e)
            exponent = exponent + e
        yield k, p, exponent


def char_poly(T: TridiagonalSym, y) -> CharPolyEval:
    """
    Evaluate P_0, ..., P_n at y. A scalar y gives values of shape (*batch, n+1); an array y
    of shape (*batch, K) (or (K,) broadcast over the batch) gives shape (*batch, K, n+1).
    """
    points, out_shape = _points(T, y)
    values, exponents = [], []
    for _, p, exponent in _recurrence(T, points):
        values.append(p)
        exponents.append(exponent)
    values = np.stack(values, axis=-1).reshape(*out_shape, T.n + 1)
    exponents = np.stack(exponents, axis=-1).reshape(*out_shape, T.n + 1)
    return CharPolyEval(values, exponents)


def _pivmin(T: TridiagonalSym):
    """Smallest pivot magnitude allowed in an LDLᵀ factorization of T - xI, per matrix"""
    largest = np.max(T.subdiag**2, axis=-1, initial=1.0)
    return np.finfo(np.float64).tiny * np.maximum(1.0, largest)


def sturm_count(T: TridiagonalSym, x):
    """
    Number of eigenvalues of T strictly below x, from the inertia of the factorization
    T - xI = U D Uᵀ built from the bottom row up. x broadcasts like in `char_poly`.
    """
    points, out_shape = _points(T, x)
    n = T.n
    diag = T.diag[..., None]
    sub2 = T.subdiag[..., None] ** 2
    pivmin = _pivmin(T)[..., None]
    d = diag[..., n - 1, :] - points
    d = np.where(np.abs(d) < pivmin, -pivmin, d)
    count = (d < 0).astype(np.int64)
    for k in range(n - 2, -1, -1):
        d = (diag[..., k, :] - points) - sub2[..., k, :] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        count += d < 0
    return count.reshape(out_shape)


def _pivot_ratio(T: TridiagonalSym, x: np.ndarray):
    """
    d_0(x) = -P_n(x) / P_{n-1}(x), the top pivot of the bottom-up factorization of T - xI,
    and its derivative from the differentiated pivot recurrence d_k' = -1 + b_k² d_{k+1}' / d_{k+1}².
    x has shape (*batch, K).
    """
    n = T.n
    pivmin = _pivmin(T)[..., None]
    d = T.diag[..., n - 1, None] - x
    dd = -np.ones(x.shape)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n - 2, -1, -1):
            d = np.where(np.abs(d) < pivmin, -pivmin, d)
            ratio = T.subdiag[..., k, None] ** 2 / d
            dd = -1.0 + ratio / d * dd
            d = (T.diag[..., k, None] - x) - ratio
    return d, dd


def _bisection(T: TridiagonalSym, tol: float, newton_steps: int = 3):
    n = T.n
    norm = np.maximum(T.norm_bound(), np.finfo(np.float64).tiny)
    pad = np.zeros((*T.batch_shape, 1))
    off = np.concatenate([pad, T.subdiag], axis=-1) + np.concatenate([T.subdiag, pad], axis=-1)
    slack = 4 * np.finfo(np.float64).eps * norm + np.finfo(np.float64).tiny
    lo = np.min(T.diag - off, axis=-1) - slack
    hi = np.max(T.diag + off, axis=-1) + slack

    lo = np.repeat(lo[..., None], n, axis=-1)
    hi = np.repeat(hi[..., None], n, axis=-1)
    index = np.arange(n)
    width = np.max(hi - lo)
    iterations = int(np.ceil(np.log2(width / (tol * np.min(norm))))) + 1 if width > 0 else 0
    for _ in range(min(max(iterations, 0), 200)):
        mid = 0.5 * (lo + hi)
        above = sturm_count(T, mid) > index
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)

    # Newton on d_0 inside each bracket; steps leaving the bracket are rejected
    x = 0.5 * (lo + hi)
    for _ in range(newton_steps):
        d, dd = _pivot_ratio(T, x)
        with np.errstate(invalid="ignore", divide="ignore"):
            step = x - d / dd
        x = np.where(np.isfinite(step) & (step >= lo) & (step <= hi), step, x)
    return x


def eigenvalues(T: TridiagonalSym, tol: float = 1e-14, method: str = "bisection"):
    """
    All eigenvalues of T in ascending order, each within tol * ||T|| of exact.

    "bisection" brackets every eigenvalue with Sturm counts, bisects all of them
    simultaneously (O(n) per count, vectorized over the batch) and polishes each with a few
    safeguarded Newton steps. "lapack" is the fast path through LAPACK's tridiagonal
    solver, one matrix at a time.
    """
    if not 0 < tol <= 1e-6:
        raise ParameterError(f"tol must be in (0, 1e-6], got {tol}")
    if method == "bisection":
        return _bisection(T, tol)
    elif method == "lapack":
        out = np.empty(T.diag.shape)
        for idx in np.ndindex(*T.batch_shape):
            out[idx] = eigvalsh_tridiagonal(T.diag[idx], T.subdiag[idx])
        return out
    raise ParameterError(f"Unknown method {method!r}, expected one of {EIGENVALUE_METHODS}")


def is_simple(T: TridiagonalSym, lam) -> np.ndarray:
    """True where every eigenvalue gap exceeds DEGENERATE_GAP * ||T||"""
    lam = np.asarray(lam, dtype=np.float64)
    if T.n < 2:
        return np.ones(T.batch_shape, dtype=bool)
    gaps = np.min(np.diff(lam, axis=-1), axis=-1)
    threshold = DEGENERATE_GAP * np.maximum(T.norm_bound(), np.finfo(np.float64).tiny)
    return gaps > threshold


def _check_simple(T: TridiagonalSym, lam: np.ndarray):
    simple = is_simple(T, lam)
    if not np.all(simple):
        collisions = np.size(simple) - np.count_nonzero(simple)
        raise DegenerateSpectrumError(f"Eigenvalue collision in {collisions} spectra: gap <= {DEGENERATE_GAP} * ||T||")


def _pivots(T: TridiagonalSym, x: np.ndarray, from_top: bool) -> np.ndarray:
    """
    All pivots of T - xI for x of shape (*batch, K), as an array of shape (*batch, K, n).
    Top-down: D_0 = a_0 - x, D_k = a_k - x - b_{k-1}² / D_{k-1}.
    Bottom-up: D_{n-1} = a_{n-1} - x, D_k = a_k - x - b_k² / D_{k+1}.
    """
    n = T.n
    shifted = T.diag[..., None, :] - x[..., None]
    sub2 = T.subdiag[..., None, :] ** 2
    pivmin = _pivmin(T)[..., None]
    pivots = np.empty(shifted.shape)
    d = None
    for k in range(n) if from_top else range(n - 1, -1, -1):
        if d is None:
            d = shifted[..., k]
        else:
            d = shifted[..., k] - sub2[..., k - 1 if from_top else k] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        pivots[..., k] = d
    return pivots


def first_row_eigvec(T: TridiagonalSym, lam) -> np.ndarray:
    """
    First row q of the eigenvector matrix, q_i² = |P_{n-1}(λ_i) / P_n'(λ_i)| (Paige).

    The ratio equals v_0² / ||v||² for an eigenvector v of λ_i. v comes from the twisted
    factorization of T - λ_i I: top-down pivots above the twist index r, bottom-up pivots
    below it, v_r = 1, so every component is a product of ratios b_k / D_k. q_i then keeps
    its relative accuracy when the eigenvector is localized far from the first row and q_i
    is many orders of magnitude below 1.
    """
    lam = np.asarray(lam, dtype=np.float64)
    if T.n == 1:
        return np.ones(lam.shape)
    _check_simple(T, lam)
    points, out_shape = _points(T, lam)
    top = _pivots(T, points, from_top=True)
    bottom = _pivots(T, points, from_top=False)
    shifted = T.diag[..., None, :] - points[..., None]
    twist = np.argmin(np.abs(top + bottom - shifted), axis=-1)[..., None]

    log_b = np.log(np.maximum(T.subdiag, np.finfo(np.float64).tiny))[..., None, :]
    above = log_b - np.log(np.abs(top[..., :-1]))  # log |v_k / v_{k+1}|
    below = log_b - np.log(np.abs(bottom[..., 1:]))  # log |v_{k+1} / v_k|
    zero = np.zeros((*above.shape[:-1], 1))
    from_bottom = np.concatenate([np.cumsum(above[..., ::-1], axis=-1)[..., ::-1], zero], axis=-1)
    from_top = np.concatenate([zero, np.cumsum(below, axis=-1)], axis=-1)
    log_v = np.where(
        np.arange(T.n) < twist,
        from_bottom - np.take_along_axis(from_bottom, twist, axis=-1),
        from_top - np.take_along_axis(from_top, twist, axis=-1),
    )
    log_q2 = 2 * log_v[..., 0] - logsumexp(2 * log_v, axis=-1)
    q = np.exp(0.5 * log_q2).reshape(out_shape)
    return q / np.linalg.norm(q, axis=-1, keepdims=True)


def spectrum(T: TridiagonalSym, tol: float = 1e-14, method: str = "bisection") -> Spectrum:
    lam = eigenvalues(T, tol=tol, method=method)
    return Spectrum(lam, first_row_eigvec(T, lam))


def laguerre_spectrum(B: BidiagonalPos, tol: float = 1e-14, method: str = "bisection") -> Spectrum:
    """Spectrum of T = B Bᵀ (squares the singular values of B, so small ones lose relative accuracy)"""
    return spectrum(laguerre_from_factor(B), tol=tol, method=method)


def _inverse_iterate(banded: np.ndarray, iterations: int) -> np.ndarray:
    n = banded.shape[1]
    x = np.ones(n) / math.sqrt(n)
    for _ in range(iterations):
        x = solve_banded((1, 1), banded, x)
        x /= np.linalg.norm(x)
    if not np.all(np.isfinite(x)):
        raise LinAlgError("inverse iteration overflowed")
    return x


def inverse_iteration(T: TridiagonalSym, lam, iterations: int = 3) -> np.ndarray:
    """
    Eigenvectors (as columns) of a single tridiagonal matrix by shifted inverse iteration,
    signs fixed so that the first row is nonnegative. A shift that makes T - (λ + shift)I
    exactly singular in floating point is enlarged and the solve repeated.
    """
    if T.batch_shape:
        raise ParameterError("inverse_iteration works on a single matrix")
    lam = np.asarray(lam, dtype=np.float64)
    n = T.n
    if n == 1:
        return np.ones((1, 1))
    base_shift = 4 * np.finfo(np.float64).eps * max(float(T.norm_bound()), np.finfo(np.float64).tiny)
    vectors = np.empty((n, n))
    banded = np.zeros((3, n))
    banded[0, 1:] = T.subdiag
    banded[2, :-1] = T.subdiag
    for i, eig in enumerate(lam):
        for attempt in range(_SHIFT_RETRIES):
            banded[1] = T.diag - (eig + base_shift * 16**attempt)
            try:
                x = _inverse_iterate(banded, iterations)
                break
            except LinAlgError:
                logger.debug(f"Singular shifted solve for eigenvalue {eig}, enlarging the shift")
        else:
            raise DegenerateSpectrumError(f"Inverse iteration failed for eigenvalue {eig}")
        vectors[:, i] = x if x[0] >= 0 else -x
    return vectors


def reconstruct(spec: Spectrum) -> TridiagonalSym:
    """
    The unique tridiagonal T with positive subdiagonal whose eigenvalues are spec.eigenvalues and
    whose eigenvector matrix has first row spec.q: Lanczos on diag(λ) started from q, with full
    (twice-applied) reorthogonalization.
    """
    lam, q = spec.eigenvalues, spec.q
    if np.any(q <= 0):
        raise DegenerateSpectrumError("Every q_i must be positive to reconstruct T")
    if np.any(np.diff(lam, axis=-1) <= 0):
        raise DegenerateSpectrumError("Eigenvalues must be distinct to reconstruct T")
    n = spec.n
    batch = lam.shape[:-1]
    basis = np.zeros((*batch, n, n))
    alpha = np.zeros((*batch, n))
    beta = np.zeros((*batch, n - 1))
    basis[..., :, 0] = q / np.linalg.norm(q, axis=-1, keepdims=True)
    for j in range(n):
        v = basis[..., :, j]
        w = lam * v
        alpha[..., j] = np.sum(v * w, axis=-1)
        done = basis[..., :, : j + 1]
        for _ in range(2):
            w = w - np.einsum("...ij,...j->...i", done, np.einsum("...ij,...i->...j", done, w))
        if j < n - 1:
            norm = np.linalg.norm(w, axis=-1)
            beta[..., j] = norm
            basis[..., :, j + 1] = w / norm[..., None]
    return TridiagonalSym(alpha, beta)


def vandermonde_direct(lam) -> SignedLog:
    """Δ(λ) = ∏_{i<j} (λ_j - λ_i) as (sign, log|Δ|); ties give sign 0 and log -inf"""
    lam = np.asarray(lam, dtype=np.float64)
    n = lam.shape[-1]
    i, j = np.triu_indices(n, k=1)
    diffs = lam[..., j] - lam[..., i]
    with np.errstate(divide="ignore"):
        log_abs = np.sum(np.log(np.abs(diffs)), axis=-1)
    sign = np.prod(np.sign(diffs), axis=-1)
    return SignedLog(sign, log_abs)


def _check_weights(q):
    q = np.asarray(q, dtype=np.float64)
    if np.any(q <= 0):
        raise DegenerateSpectrumError("Zero eigenvector weight q_i: the matrix splits")
    return q


def vandermonde_tridiagonal(T: TridiagonalSym, q) -> SignedLog:
    """Δ(λ) = ∏_j b_j^{n-1-j} / ∏_i q_i from the entries of T and its first eigenvector row"""
    q = _check_weights(q)
    powers = np.arange(T.n - 1, 0, -1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        log_abs = np.sum(powers * np.log(T.subdiag), axis=-1) - np.sum(np.log(q), axis=-1)
    return SignedLog(np.ones(np.shape(log_abs)), log_abs)


def jacobian_t_to_qlambda(T: TridiagonalSym, q) -> SignedLog:
    """J = ∏ b_i / ∏ q_i for the change of variables T -> (q, λ)"""
    q = _check_weights(q)
    with np.errstate(divide="ignore"):
        log_abs = np.sum(np.log(T.subdiag), axis=-1) - np.sum(np.log(q), axis=-1)
    return SignedLog(np.ones(np.shape(log_abs)), log_abs)


def jacobian_b_to_t(B: BidiagonalPos) -> SignedLog:
    """J_{B -> T} = 1 / (2^m x_{m-1} ∏_{i<m-1} x_i²), x_{m-1} being the bottom-right entry of B"""
    x = B.diag
    with np.errstate(divide="ignore"):
        log_abs = -(B.m * math.log(2) + np.log(x[..., -1]) + 2 * np.sum(np.log(x[..., :-1]), axis=-1))
    return SignedLog(np.ones(np.shape(log_abs)), log_abs)


__all__ = [
    "SignedLog",
    "CharPolyEval",
    "char_poly",
    "sturm_count",
    "eigenvalues",
    "is_simple",
    "first_row_eigvec",
    "spectrum",
    "laguerre_spectrum",
    "inverse_iteration",
    "reconstruct",
    "vandermonde_direct",
    "vandermonde_tridiagonal",
    "jacobian_t_to_qlambda",
    "jacobian_b_to_t",
]
