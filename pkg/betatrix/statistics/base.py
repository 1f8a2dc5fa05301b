from __future__ import annotations

import abc
import logging
from typing import NewType

from betatrix.buffers import DataBuffer

SignalName = NewType("SignalName", str)
logger = logging.getLogger(__name__)


class Statistic(abc.ABC):
    """
    A named pure function of buffer signals, evaluated on a whole block of samples at once.
    The sample axis is axis 0 of every input and of the output. A statistic may return a
    dict, in which case each entry is stored as the signal "<name>_<key>".

    `params` holds the constructor keywords beyond inputs and name, so that
    ``type(stat)(*stat.input_signals, name=stat.name, **stat.params)`` rebuilds it.
    """

    def __init__(self, *input_signals: SignalName, name: str, params: dict | None = None):
        self.name = name
        self.input_signals = input_signals
        self.params = dict(params or {})

    @abc.abstractmethod
    def __call__(self, *inputs):
        ...

    def __repr__(self):
        inputs = ", ".join(self.input_signals)
        return f"{type(self).__name__}({inputs} -> {self.name}, {self.params})"


def compute_statistics(data: DataBuffer, statistics: list[Statistic]) -> DataBuffer:
    """Evaluate statistics in order; later ones may consume the outputs of earlier ones"""
    out = data.copy()
    for stat in statistics:
        try:
            value = stat(*(out[signal] for signal in stat.input_signals))
        except Exception:
            logger.exception("Statistic %s failed on inputs %s", stat.name, stat.input_signals)
            raise
        outputs = value if isinstance(value, dict) else {None: value}
        for key, v in outputs.items():
            out[stat.name if key is None else f"{stat.name}_{key}"] = v
    return out
