"""
Monte Carlo harness.

Samples are drawn in fixed-size blocks; block b always uses the substream (seed, b), and
block summaries are merged in block order. The result therefore depends only on
(seed, samples, block_size), never on how many workers ran the blocks.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.stats

from betatrix.buffers import DataBuffer
from betatrix.errors import ParameterError, ResourceCapError
from betatrix.sources.base import EnsembleSource
from betatrix.sources.streams import RandomStream
from betatrix.statistics.base import Statistic, compute_statistics
from betatrix.statistics.serialization import encode_statistic

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 1024
DEFAULT_RETAIN_CAP = 100_000
MIN_KS_SAMPLES = 10


@dataclass
class SummaryStats:
    """
    Streaming summary of one statistic: count, mean, sum of squared deviations (m2), extrema,
    an optional pooled histogram over fixed edges and optionally the retained raw samples.
    Samples containing NaN are not summarized but counted as skipped.
    """

    count: int = 0
    skipped: int = 0
    mean: np.ndarray = None
    m2: np.ndarray = None
    minimum: np.ndarray = None
    maximum: np.ndarray = None
    edges: np.ndarray = None
    counts: np.ndarray = None
    below: int = 0
    above: int = 0
    retained: np.ndarray = None

    @classmethod
    def from_values(cls, values, edges=None, retain=False):
        values = np.asarray(values, dtype=np.float64)
        flat = values.reshape(len(values), -1)
        valid = ~np.any(np.isnan(flat), axis=1)
        kept = values[valid]
        out = cls(count=int(valid.sum()), skipped=int(len(values) - valid.sum()))
        if out.count:
            out.mean = kept.mean(axis=0)
            out.m2 = ((kept - out.mean) ** 2).sum(axis=0)
            out.minimum = kept.min(axis=0)
            out.maximum = kept.max(axis=0)
        if edges is not None:
            out.edges = np.asarray(edges, dtype=np.float64)
            pooled = kept.ravel()
            out.counts, _ = np.histogram(pooled, out.edges)
            out.below = int(np.sum(pooled < out.edges[0]))
            out.above = int(np.sum(pooled > out.edges[-1]))
        if retain:
            out.retained = kept
        return out

    def merge(self, other: "SummaryStats") -> "SummaryStats":
        """Chan et al. pairwise combination; associative and commutative up to rounding"""
        out = SummaryStats(count=self.count + other.count, skipped=self.skipped + other.skipped)
        if self.count == 0 or other.count == 0:
            src = self if self.count else other
            out.mean, out.m2, out.minimum, out.maximum = src.mean, src.m2, src.minimum, src.maximum
        else:
            delta = other.mean - self.mean
            out.mean = self.mean + delta * other.count / out.count
            out.m2 = self.m2 + other.m2 + delta**2 * self.count * other.count / out.count
            out.minimum = np.minimum(self.minimum, other.minimum)
            out.maximum = np.maximum(self.maximum, other.maximum)
        if self.edges is not None:
            out.edges = self.edges
            out.counts = self.counts + other.counts
            out.below = self.below + other.below
            out.above = self.above + other.above
        if self.retained is not None and other.retained is not None:
            out.retained = np.concatenate([self.retained, other.retained], axis=0)
        return out

    @property
    def variance(self):
        if self.count < 2:
            return np.full(np.shape(self.mean), np.nan)
        return self.m2 / (self.count - 1)

    @property
    def std_error(self):
        return np.sqrt(self.variance / self.count)

    def to_json(self):
        out = {
            "count": self.count,
            "skipped": self.skipped,
            "mean": np.asarray(self.mean).tolist(),
            "variance": np.asarray(self.variance).tolist(),
            "min": np.asarray(self.minimum).tolist(),
            "max": np.asarray(self.maximum).tolist(),
        }
        if self.edges is not None:
            out["histogram"] = {"edges": self.edges.tolist(), "counts": self.counts.tolist()}
        return out


@dataclass
class SampleStats:
    """Summaries of every collected statistic over the same run of samples"""

    stats: dict
    sample_count: int = 0

    def __getitem__(self, name) -> SummaryStats:
        return self.stats[name]

    def __contains__(self, name):
        return name in self.stats

    def merge(self, other: "SampleStats") -> "SampleStats":
        if self.stats.keys() != other.stats.keys():
            raise ParameterError(f"Cannot merge summaries of {list(self.stats)} and {list(other.stats)}")
        return SampleStats(
            {name: s.merge(other.stats[name]) for name, s in self.stats.items()},
            self.sample_count + other.sample_count,
        )

    def to_json(self):
        return {"sample_count": self.sample_count, "stats": {k: v.to_json() for k, v in self.stats.items()}}


@dataclass(frozen=True)
class MonteCarloConfig:
    """
    One Monte Carlo run: the ensemble source, the number of samples, the seed, the number of
    worker threads, the statistics computed on every block and the signals to summarize.
    Signals in `retain` keep their raw samples; signals in `histograms` map to bin edges.
    """

    source: EnsembleSource
    samples: int
    seed: int = 0
    workers: int = 1
    statistics: tuple = ()
    collect: tuple = ()
    retain: tuple = ()
    histograms: dict = field(default_factory=dict)
    block_size: int = DEFAULT_BLOCK_SIZE
    retain_cap: int = DEFAULT_RETAIN_CAP

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 1:
            raise ParameterError(f"Sample count must be a positive integer, got {self.samples}")
        if int(self.workers) != self.workers or self.workers < 1:
            raise ParameterError(f"Worker count must be a positive integer, got {self.workers}")
        if self.block_size < 1:
            raise ParameterError(f"Block size must be positive, got {self.block_size}")
        for stat in self.statistics:
            if not isinstance(stat, Statistic):
                raise ParameterError(f"Expected a Statistic, got {stat!r}")
        object.__setattr__(self, "statistics", tuple(self.statistics))
        object.__setattr__(self, "retain", tuple(self.retain))
        names = tuple(dict.fromkeys((*self.collect, *self.retain, *self.histograms)))
        object.__setattr__(self, "collect", names)

    @property
    def blocks(self):
        """(block index, block size) pairs covering all samples"""
        full, rest = divmod(self.samples, self.block_size)
        sizes = [self.block_size] * full + ([rest] if rest else [])
        return list(enumerate(sizes))

    def retained_signals(self):
        """Signals whose raw samples fit under the retention cap; others fall back to their histogram"""
        if self.samples <= self.retain_cap:
            return self.retain
        missing = [name for name in self.retain if name not in self.histograms]
        if missing:
            raise ResourceCapError(
                f"Retaining {self.samples} samples of {missing} exceeds the cap of {self.retain_cap}", self.samples
            )
        logger.warning(f"{self.samples} samples exceed the retention cap, using binned summaries for {self.retain}")
        return ()

    def to_json(self):
        return {
            "source": self.source.config_json(),
            "samples": self.samples,
            "seed": self.seed,
            "workers": self.workers,
            "block_size": self.block_size,
            "statistics": [encode_statistic(s) for s in self.statistics],
            "collect": list(self.collect),
        }


def _summarize(cfg: MonteCarloConfig, data: DataBuffer, retain) -> SampleStats:
    stats = {
        name: SummaryStats.from_values(data[name], edges=cfg.histograms.get(name), retain=name in retain)
        for name in cfg.collect
    }
    return SampleStats(stats, len(data))


def run_block(cfg: MonteCarloConfig, block: int, size: int, retain=()) -> SampleStats:
    """Sample one block from its own substream and summarize it"""
    stream = RandomStream(cfg.seed, block)
    data = compute_statistics(cfg.source.sample(stream, size), cfg.statistics)
    return _summarize(cfg, data, retain)


def run_monte_carlo(cfg: MonteCarloConfig) -> SampleStats:
    retain = cfg.retained_signals()
    blocks = cfg.blocks
    logger.debug(f"Monte Carlo config {cfg.to_json()}")
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        results = list(pool.map(lambda b: run_block(cfg, b[0], b[1], retain), blocks))
    merged = reduce(SampleStats.merge, results)
    elapsed = time.perf_counter() - start
    logger.info(
        f"Ran {cfg.samples} samples of {cfg.source!r} in {len(blocks)} blocks "
        f"on {cfg.workers} workers in {elapsed:.2f}s"
    )
    return merged


def ks_one_sample(samples, cdf) -> float:
    """Sup-norm distance between the empirical CDF of the samples and `cdf`"""
    samples = np.asarray(samples, dtype=np.float64).ravel()
    if len(samples) < MIN_KS_SAMPLES:
        raise ParameterError(f"KS test needs at least {MIN_KS_SAMPLES} samples, got {len(samples)}")
    return float(scipy.stats.kstest(samples, cdf).statistic)


def ks_two_sample(xs, ys) -> float:
    """Sup-norm distance between the empirical CDFs of two samples"""
    xs = np.asarray(xs, dtype=np.float64).ravel()
    ys = np.asarray(ys, dtype=np.float64).ravel()
    if min(len(xs), len(ys)) < MIN_KS_SAMPLES:
        raise ParameterError(f"KS test needs at least {MIN_KS_SAMPLES} samples per side")
    return float(scipy.stats.ks_2samp(xs, ys).statistic)


def ks_binned(summary: SummaryStats, cdf) -> float:
    """
    KS distance evaluated only at the histogram edges, for runs too large to retain.
    This is a lower bound on the exact statistic, tight when the bins are narrow.
    """
    if summary.edges is None:
        raise ParameterError("Binned KS needs a histogram")
    total = summary.below + summary.counts.sum() + summary.above
    ecdf = (summary.below + np.concatenate([[0], np.cumsum(summary.counts)])) / total
    return float(np.max(np.abs(ecdf - cdf(summary.edges))))


def ks_statistic(summary: SummaryStats, cdf) -> float:
    """One-sample KS on the retained samples, or its binned approximation"""
    if summary.retained is not None:
        return ks_one_sample(summary.retained, cdf)
    return ks_binned(summary, cdf)


__all__ = [
    "SummaryStats",
    "SampleStats",
    "MonteCarloConfig",
    "run_block",
    "run_monte_carlo",
    "ks_one_sample",
    "ks_two_sample",
    "ks_binned",
    "ks_statistic",
]
