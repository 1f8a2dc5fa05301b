from __future__ import annotations

import numpy as np

from betatrix.statistics.base import SignalName, Statistic


class Trace(Statistic):
    """Sum over the last axis, e.g. the trace from a diagonal or from eigenvalues"""

    def __init__(self, input_signal: SignalName, name: str):
        super().__init__(input_signal, name=name)

    def __call__(self, x):
        return np.sum(x, axis=-1)


class Entry(Statistic):
    """A single coordinate of a vector signal"""

    def __init__(self, input_signal: SignalName, name: str, index: int):
        super().__init__(input_signal, name=name, params={"index": index})
        self.index = index

    def __call__(self, x):
        return x[:, self.index]


class Power(Statistic):
    def __init__(self, input_signal: SignalName, name: str, exponent: float = 2.0):
        super().__init__(input_signal, name=name, params={"exponent": exponent})
        self.exponent = exponent

    def __call__(self, x):
        return x**self.exponent


__all__ = ["Trace", "Entry", "Power"]
