"""Statistics that turn sampled matrices into their sparse (tri/bidiagonal) forms"""
from __future__ import annotations

from betatrix.matrices import BidiagonalPos, DenseSymmetric
from betatrix.sources.ensembles import laguerre_from_factor
from betatrix.sources.reductions import golub_kahan_bidiagonalize, householder_tridiagonalize
from betatrix.statistics.base import SignalName, Statistic


class Tridiagonalize(Statistic):
    """Householder reduction of dense symmetric/Hermitian matrices, outputs "<name>_diag" and "<name>_subdiag" """

    def __init__(self, input_signal: SignalName, name: str):
        super().__init__(input_signal, name=name)

    def __call__(self, matrix):
        T = householder_tridiagonalize(DenseSymmetric(matrix))
        return {"diag": T.diag, "subdiag": T.subdiag}


class Bidiagonalize(Statistic):
    """Golub-Kahan reduction of dense m x n matrices to the lower bidiagonal factor"""

    def __init__(self, input_signal: SignalName, name: str):
        super().__init__(input_signal, name=name)

    def __call__(self, matrix):
        B = golub_kahan_bidiagonalize(matrix)
        return {"diag": B.diag, "subdiag": B.subdiag}


class LaguerreProduct(Statistic):
    """Tridiagonal T = B Bᵀ from the bidiagonal factor"""

    def __init__(self, factor_diag: SignalName, factor_subdiag: SignalName, name: str):
        super().__init__(factor_diag, factor_subdiag, name=name)

    def __call__(self, diag, subdiag):
        T = laguerre_from_factor(BidiagonalPos(diag, subdiag))
        return {"diag": T.diag, "subdiag": T.subdiag}


__all__ = ["Tridiagonalize", "Bidiagonalize", "LaguerreProduct"]
