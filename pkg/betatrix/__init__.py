from .errors import *  # noqa: F401, F403
from .matrices import *  # noqa: F401, F403
from .sources import *  # noqa: F401, F403
from .spectral import *  # noqa: F401, F403
from .closed_forms import *  # noqa: F401, F403
from .statistics import *  # noqa: F401, F403
from .symbolic import *  # noqa: F401, F403

from .montecarlo import *  # noqa: F401, F403
from .verify import *  # noqa: F401, F403

from .buffers import DataBuffer  # noqa: F401

# The star import from .statistics re-exports its `spectral` submodule; rebind the top-level module.
import sys as _sys  # noqa: E402

spectral = _sys.modules[__name__ + ".spectral"]

__version__ = "0.1.0"

__doc__ = """
betatrix
========

Description
-----------
Betatrix samples the tridiagonal β-Hermite and bidiagonal β-Laguerre random matrix models
for any β > 0, computes their spectra, evaluates the closed forms of their joint eigenvalue
densities and moments, and verifies the distributional identities behind them.
"""
