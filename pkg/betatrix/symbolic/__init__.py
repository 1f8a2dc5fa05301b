"""
Exact moments of the β-ensembles as polynomials in s = β/2 and the Laguerre parameter a.
"""

from .betapoly import *  # noqa: F401, F403
from .expansion import DEFAULT_MONOMIAL_CAP  # noqa: F401
from .moments import *  # noqa: F401, F403
