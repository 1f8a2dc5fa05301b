"""json.dump/json.load hooks so statistic pipelines can be stored next to run records"""
import numpy as np

import betatrix.statistics as st
from betatrix.statistics.base import Statistic

_TAG = "__statistic__"


def encode_statistic(obj):
    if isinstance(obj, Statistic):
        return {
            _TAG: True,
            "type": type(obj).__name__,
            "inputs": list(obj.input_signals),
            "name": obj.name,
            "params": obj.params,
        }
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def decode_statistic(obj: dict):
    if not obj.get(_TAG):
        return obj
    cls = getattr(st, obj["type"], None)
    if cls is None or not (isinstance(cls, type) and issubclass(cls, Statistic)):
        raise ValueError(f"Unknown statistic type {obj['type']!r}")
    return cls(*obj["inputs"], name=obj["name"], **obj["params"])
