"""
Exceptions raised by betatrix. The CLI maps them onto exit codes.
"""


class BetatrixError(Exception):
    """Base class for all betatrix errors"""

    exit_code = 1


class ParameterError(BetatrixError, ValueError):
    """A precondition on ensemble parameters or inputs does not hold"""

    exit_code = 2


class DegenerateSpectrumError(BetatrixError, ArithmeticError):
    """Colliding eigenvalues or a vanishing eigenvector weight where the (q, lambda) bijection needs them distinct"""


class ResourceCapError(BetatrixError, RuntimeError):
    """A configured size cap was exceeded"""

    exit_code = 3

    def __init__(self, message: str, count: int):
        super().__init__(f"{message} (count={count})")
        self.count = count


class QuadratureError(BetatrixError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance"""


class MomentMismatchError(BetatrixError, ArithmeticError):
    """Two closed forms of the same moment disagree beyond rounding"""


__all__ = [
    "BetatrixError",
    "ParameterError",
    "DegenerateSpectrumError",
    "ResourceCapError",
    "QuadratureError",
    "MomentMismatchError",
]
