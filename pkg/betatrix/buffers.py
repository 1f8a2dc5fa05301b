import logging
import re
from collections.abc import MutableMapping

import numpy as np
import pandas as pd

from betatrix.errors import ParameterError

logger = logging.getLogger(__name__)

_COLUMN_KEY = re.compile(r"(.+)_(\d+)")


class DataBuffer(MutableMapping):
    """
    A batch of samples stored as named numpy arrays ("signals").
    Axis 0 is the sample axis and is shared by every signal; trailing axes are free,
    e.g. 1000 tridiagonal 8x8 matrices are "diag" with shape (1000, 8) and "subdiag" with shape (1000, 7).

    A key "name_i" that is not itself a signal selects column i of the 2-d signal "name".
    """

    def __init__(self, data=None):
        self._data = {}
        for key, value in (data or {}).items():
            self[key] = value

    def __len__(self):
        if not self._data:
            return 0
        return next(iter(self._data.values())).shape[0]

    def __getitem__(self, key):
        if key in self._data:
            return self._data[key]
        match = _COLUMN_KEY.fullmatch(key)
        if match is not None and match.group(1) in self._data:
            name, index = match.groups()
            return self._data[name][:, int(index)]
        raise KeyError(f"Signal {key} not found in {list(self._data)}")

    def __setitem__(self, key, value):
        value = np.asarray(value)
        if value.ndim == 0:
            raise ParameterError(f"Signal {key} needs a sample axis")
        if self._data and key not in self._data and value.shape[0] != len(self):
            raise ParameterError(f"Signal {key} has {value.shape[0]} samples, buffer has {len(self)}")
        self._data[key] = value

    def __delitem__(self, key):
        del self._data[key]

    def __iter__(self):
        return iter(self._data)

    def copy(self):
        return DataBuffer(dict(self._data))

    def extend(self, other):
        """Append the samples of another buffer holding the same signals"""
        if not self._data:
            self._data = dict(other.items())
            return
        if set(other.keys()) != set(self._data):
            raise ParameterError(f"Cannot extend signals {list(self._data)} with {list(other.keys())}")
        self._data = {k: np.concatenate([v, other[k]], axis=0) for k, v in self._data.items()}

    def select(self, *keys):
        """A new buffer holding only the given signals"""
        return DataBuffer({k: self[k] for k in keys})

    def to_dataframe(self):
        """One column per scalar signal, or per column "name_i" of a 2-d signal"""
        columns = {}
        for k, v in self._data.items():
            if v.ndim == 1:
                columns[k] = v
            elif v.ndim == 2:
                columns.update({f"{k}_{i}": v[:, i] for i in range(v.shape[1])})
            else:
                raise ParameterError(f"Can't write signal {k} with ndim={v.ndim} as columns")
        return pd.DataFrame(columns)

    def __repr__(self):
        shapes = ", ".join(f"{k}: {v.shape}" for k, v in self._data.items())
        return f"DataBuffer({{{shapes}}})"


__all__ = ["DataBuffer"]
