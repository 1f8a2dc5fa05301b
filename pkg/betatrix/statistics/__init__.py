"""
Statistics are named pure functions of sampled signals. They are deterministic and have
no side effects, so a Monte Carlo run is fully described by its source, seed and the
JSON serialization of its statistics.
"""

from .arithmetic import *  # noqa: F401, F403
from .matrix import *  # noqa: F401, F403
from .spectral import *  # noqa: F401, F403
from .base import compute_statistics, Statistic, SignalName  # noqa: F401, F403
