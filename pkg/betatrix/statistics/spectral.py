from __future__ import annotations

import logging

import numpy as np

from betatrix.matrices import TridiagonalSym
from betatrix.spectral import eigenvalues, first_row_eigvec, is_simple, vandermonde_direct
from betatrix.statistics.base import SignalName, Statistic

logger = logging.getLogger(__name__)


class Eigenvalues(Statistic):
    """Ascending eigenvalues of the tridiagonal matrices given by diagonal and subdiagonal signals"""

    def __init__(self, diag: SignalName, subdiag: SignalName, name: str, method: str = "bisection"):
        super().__init__(diag, subdiag, name=name, params={"method": method})
        self.method = method

    def __call__(self, diag, subdiag):
        return eigenvalues(TridiagonalSym(diag, subdiag), method=self.method)


class FirstRowWeights(Statistic):
    """
    First row q of the eigenvector matrices (Paige formula). Samples with colliding
    eigenvalues get a row of NaN, which the Monte Carlo summaries count as skipped.
    """

    def __init__(self, diag: SignalName, subdiag: SignalName, eigenvalues: SignalName, name: str):
        super().__init__(diag, subdiag, eigenvalues, name=name)

    def __call__(self, diag, subdiag, lam):
        T = TridiagonalSym(diag, subdiag)
        simple = is_simple(T, lam)
        q = np.full(lam.shape, np.nan)
        if np.any(simple):
            q[simple] = first_row_eigvec(T[simple], lam[simple])
        if not np.all(simple):
            logger.warning(f"Skipping {np.size(simple) - np.count_nonzero(simple)} degenerate spectra")
        return q


class LargestEigenvalue(Statistic):
    def __init__(self, eigenvalues: SignalName, name: str):
        super().__init__(eigenvalues, name=name)

    def __call__(self, lam):
        return lam[..., -1]


class Determinant(Statistic):
    """Product of the eigenvalues"""

    def __init__(self, eigenvalues: SignalName, name: str):
        super().__init__(eigenvalues, name=name)

    def __call__(self, lam):
        return np.prod(lam, axis=-1)


class Discriminant(Statistic):
    """D(λ) = Δ(λ)², or its logarithm with log=True"""

    def __init__(self, eigenvalues: SignalName, name: str, log: bool = False):
        super().__init__(eigenvalues, name=name, params={"log": log})
        self.log = log

    def __call__(self, lam):
        log_abs = 2 * vandermonde_direct(lam).log_abs
        return log_abs if self.log else np.exp(log_abs)


class ElementarySymmetric(Statistic):
    """e_k(λ), the sum of all products of k distinct eigenvalues"""

    def __init__(self, eigenvalues: SignalName, name: str, order: int):
        super().__init__(eigenvalues, name=name, params={"order": order})
        self.order = order

    def __call__(self, lam):
        e = [np.ones(lam.shape[:-1])] + [np.zeros(lam.shape[:-1]) for _ in range(self.order)]
        for j in range(lam.shape[-1]):
            for k in range(self.order, 0, -1):
                e[k] = e[k] + lam[..., j] * e[k - 1]
        return e[self.order]


class ScaledEigenvalues(Statistic):
    """λ / √(βn), the scaling under which the Hermite spectrum tends to the semicircle on [-√2, √2]"""

    def __init__(self, eigenvalues: SignalName, name: str, beta: float):
        super().__init__(eigenvalues, name=name, params={"beta": beta})
        self.beta = beta

    def __call__(self, lam):
        return lam / np.sqrt(self.beta * lam.shape[-1])


__all__ = [
    "Eigenvalues",
    "FirstRowWeights",
    "LargestEigenvalue",
    "Determinant",
    "Discriminant",
    "ElementarySymmetric",
    "ScaledEigenvalues",
]
