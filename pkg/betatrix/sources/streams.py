"""
Deterministic, splittable random streams and the scalar variates every ensemble is built from.

A `RandomStream` is keyed by (seed, stream_id) on a counter-based Philox generator, so
streams with different ids are independent substreams that need no coordination, and
the whole output of a sampler is a pure function of (seed, stream_id).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from betatrix.errors import ParameterError

_UINT64_MASK = 0xFFFF_FFFF_FFFF_FFFF


class RandomStream:
    """A keyed substream (seed, stream_id) of the Philox counter-based generator"""

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.array([self.seed & _UINT64_MASK, self.stream_id & _UINT64_MASK], dtype=np.uint64)
        self._generator = np.random.Generator(np.random.Philox(key=key))

    def split(self, stream_id: int) -> "RandomStream":
        """Another substream under the same seed"""
        return RandomStream(self.seed, stream_id)

    def uniform(self, size=None):
        """Uniform variates on [0, 1), one 64-bit word each"""
        return self._generator.random(size)

    def standard_gamma(self, shape, size=None):
        return self._generator.standard_gamma(shape, size)

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id})"


@dataclass(frozen=True)
class ChiLaw:
    """χ_r law with r > 0 degrees of freedom; r may be non-integer, or an array of dofs"""

    dof: float | np.ndarray

    def __post_init__(self):
        if not np.all(np.asarray(self.dof) > 0):
            raise ParameterError(f"Chi degrees of freedom must be positive, got {self.dof}")


def gaussian(stream: RandomStream, size=None):
    """
    Standard normal variates by the Box-Muller transform.
    Two uniforms are consumed per pair of normals, so a draw of k variates always
    consumes 2 * ceil(k / 2) stream words.
    """
    count = 1 if size is None else int(np.prod(size))
    pairs = (count + 1) // 2
    u = stream.uniform((2, pairs))
    radius = np.sqrt(-2.0 * np.log1p(-u[0]))
    angle = 2.0 * np.pi * u[1]
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:count]
    if size is None:
        return float(z[0])
    return z.reshape(size)


def gamma(stream: RandomStream, shape, size=None):
    """
    Gamma(shape, scale 1) variates for any shape > 0.
    Shapes below 1 are boosted: G(k) = G(k + 1) * U^(1/k).
    """
    shape = np.asarray(shape, dtype=np.float64)
    if not np.all(shape > 0):
        raise ParameterError(f"Gamma shape must be positive, got {shape}")
    if size is None:
        size = shape.shape
    shape = np.broadcast_to(shape, size)
    small = shape < 1
    variates = stream.standard_gamma(np.where(small, shape + 1.0, shape), size)
    if np.any(small):
        u = stream.uniform(size)
        with np.errstate(divide="ignore"):
            boost = np.where(small, np.power(u, 1.0 / shape), 1.0)
        variates = variates * boost
    return variates


def chi(stream: RandomStream, law: ChiLaw, size=None):
    """χ_r variates as the square root of a Gamma(r/2, scale 2) variate"""
    dof = np.asarray(law.dof, dtype=np.float64)
    variates = np.sqrt(2.0 * gamma(stream, dof / 2.0, size))
    if size is None and variates.ndim == 0:
        return float(variates)
    return variates


def chi_even_moment(r: float, k: int):
    """
    E[χ_r^{2k}] = r (r + 2) ... (r + 2(k - 1)), exact for rational r.

    >>> chi_even_moment(2, 2)
    8
    """
    if not r > 0:
        raise ParameterError(f"Chi degrees of freedom must be positive, got {r}")
    if k < 0:
        raise ParameterError(f"Moment order must be nonnegative, got {k}")
    return math.prod(r + 2 * j for j in range(k))


__all__ = ["RandomStream", "ChiLaw", "gaussian", "gamma", "chi", "chi_even_moment"]
