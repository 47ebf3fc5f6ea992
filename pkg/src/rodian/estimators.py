"""
Robust measures of central tendency for 1-d data.

`rodian` is the main estimator.  It builds several equal-width histograms
of the normalized data, scores the tallest bin of each by how likely that
height is under a uniform outlier model, and returns the median of the data
inside the least likely (i.e. least random) bin.

The remaining functions are the baselines it is benchmarked against.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from .histogram import (
    as_finite_array,
    cached_lookup_table,
    log_probability_of_randomness,
    normalize,
    region_of,
    unnormalize,
)

__all__ = [
    "DEFAULT_BIN_COUNTS",
    "RodianConfig",
    "EstimatorOutcome",
    "rodian",
    "median",
    "lmeds",
    "fixed_histogram_median",
    "alpha_trimmed_mean",
]

DEFAULT_BIN_COUNTS = (2, 3, 4, 5, 7, 9, 11, 14, 17, 20)


@dataclass(frozen=True)
class RodianConfig:
    """
    Parameters
    ----------
    bin_counts : tuple of int
        Bin counts of the candidate histograms, ascending and >= 2.
    log_p_tie_tolerance : float
        Relative tolerance under which two log-probabilities count as equal.
        Equal scores are resolved in favour of the smaller bin count.
    """

    bin_counts: Tuple[int, ...] = DEFAULT_BIN_COUNTS
    log_p_tie_tolerance: float = 1e-12

    def __post_init__(self):
        counts = tuple(int(b) for b in self.bin_counts)
        object.__setattr__(self, "bin_counts", counts)
        if not counts:
            raise ValueError("bin_counts must not be empty")
        if any(b < 2 for b in counts):
            raise ValueError("bin counts must be >= 2")
        if any(a >= b for a, b in zip(counts, counts[1:])):
            raise ValueError("bin_counts must be strictly ascending")
        if not self.log_p_tie_tolerance >= 0:
            raise ValueError("log_p_tie_tolerance must be non-negative")


DEFAULT_CONFIG = RodianConfig()


@dataclass(frozen=True)
class EstimatorOutcome:
    estimate: float
    chosen_b: Optional[int] = None
    chosen_bin_bounds: Optional[Tuple[float, float]] = None
    fell_back_to_median: bool = False
    degenerate_range: bool = False

    def __float__(self):
        return self.estimate


def _sorted_median(xs):
    n = len(xs)
    mid = n // 2
    if n % 2:
        return float(xs[mid])
    lo, hi = float(xs[mid - 1]), float(xs[mid])
    m = lo / 2 + hi / 2 if math.isinf(lo + hi) else (lo + hi) / 2
    return min(max(m, lo), hi)


@lru_cache(maxsize=64)
def _flat_layout(table):
    """Flattened (histogram, bin) slot of every (region, histogram) cell."""
    width = max(table.bin_counts)
    rows = np.arange(len(table.bin_counts)) * width
    return (table.region_indices.astype(np.intp) + rows).ravel(), width


def _histogram_counts(table, region_counts):
    """Bin counts of every histogram in `table`, zero-padded to equal width."""
    flat, width = _flat_layout(table)
    nb = len(table.bin_counts)
    weights = np.repeat(region_counts, nb).astype(float)
    counts = np.bincount(flat, weights=weights, minlength=nb * width)
    return counts.astype(np.int64).reshape(nb, width)


def rodian(data, config=DEFAULT_CONFIG):
    """
    Robustified median of `data`.

    Parameters
    ----------
    data : array_like
        Finite real numbers, at least one.
    config : RodianConfig, optional

    Returns
    -------
    EstimatorOutcome
        ``estimate`` holds the value; the other fields say which histogram
        was chosen, or whether the plain median had to be used because every
        histogram had a tie for its tallest bin.

    Examples
    --------
    >>> rodian([1.0, 1.1, 1.2, 1.3, 9.0, 50.0, 75.0]).estimate
    1.15
    """
    xs = np.sort(as_finite_array(data))
    sample = normalize(xs, presorted=True)
    record = sample.record
    if record.degenerate:
        return EstimatorOutcome(float(xs[0]), degenerate_range=True)

    n = len(xs)
    table = cached_lookup_table(config.bin_counts)
    region_counts = np.bincount(region_of(sample.values, table),
                                minlength=table.n_regions)
    # per-point lookup aggregated per region: identical counts, O(regions) work
    counts = _histogram_counts(table, region_counts)
    k = counts.max(axis=1)
    tallest = counts.argmax(axis=1)
    tie = np.count_nonzero(counts == k[:, None], axis=1) > 1
    log_p = [log_probability_of_randomness(n, int(kk), b) if not t else math.inf
             for kk, b, t in zip(k, table.bin_counts, tie)]

    best = min(log_p)
    if best == math.inf:
        return EstimatorOutcome(_sorted_median(xs), fell_back_to_median=True)
    slack = config.log_p_tie_tolerance * abs(best)
    col = next(c for c, lp in enumerate(log_p) if lp <= best + slack)
    b, j = table.bin_counts[col], int(tallest[col])

    # sorted data + monotone binning -> the bin's members are one slice
    in_bin = np.flatnonzero(table.region_indices[:, col] == j)
    offsets = np.concatenate(([0], np.cumsum(region_counts)))
    members = xs[offsets[in_bin[0]]:offsets[in_bin[-1] + 1]]

    bounds = (unnormalize(j / b, record), unnormalize((j + 1) / b, record))
    return EstimatorOutcome(_sorted_median(members), chosen_b=b,
                            chosen_bin_bounds=bounds)


def median(data):
    """Sample median; the mean of the two middle values for even length."""
    return _sorted_median(np.sort(as_finite_array(data)))


def lmeds(data, chunk_size=4_000_000):
    """
    Least-median-of-squares location estimate.

    Returns the data point whose median squared distance to the other
    points is smallest.  Ties go to the smallest such point.  Cost is
    quadratic in ``len(data)``; `chunk_size` caps the number of pairwise
    distances held in memory at once.
    """
    xs = np.sort(as_finite_array(data))
    n = len(xs)
    if n <= 2:
        return float(xs[0])
    # exact power-of-two rescale so the squares cannot overflow
    peak = float(np.max(np.abs(xs)))
    z = np.ldexp(xs, -math.frexp(peak)[1]) if peak > 0 else xs
    # each row holds one self-distance of 0, always the row minimum; the
    # median of the other n - 1 entries sits one order statistic higher
    m = n - 1
    hi = m // 2 + 1
    lo = hi if m % 2 else hi - 1
    rows = max(1, chunk_size // n)
    scores = np.empty(n)
    for start in range(0, n, rows):
        d = z[start:start + rows, None] - z[None, :]
        sq = np.partition(d * d, (lo, hi) if lo != hi else hi, axis=1)
        scores[start:start + rows] = (sq[:, lo] + sq[:, hi]) / 2
    return float(xs[int(np.argmin(scores))])


def fixed_histogram_median(data, b):
    """
    Median of the values in the tallest bin of a single `b`-bin histogram
    spanning ``[min(data), max(data)]``.  Ties go to the lowest bin.
    """
    b = int(b)
    if b < 1:
        raise ValueError("b must be >= 1")
    xs = np.sort(as_finite_array(data))
    sample = normalize(xs, presorted=True)
    if sample.record.degenerate or b == 1:
        return _sorted_median(xs)
    table = cached_lookup_table((b,))
    idx = table.region_indices[region_of(sample.values, table), 0]
    counts = np.bincount(idx, minlength=b)
    tallest = int(np.argmax(counts))
    lo = int(np.searchsorted(idx, tallest, side="left"))
    return _sorted_median(xs[lo:lo + int(counts[tallest])])


def alpha_trimmed_mean(data, alpha):
    """
    Mean after dropping ``floor(alpha * n / 2)`` values from each end.

    >>> alpha_trimmed_mean([1, 2, 3, 4, 100], 0.4)
    3.0
    """
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    xs = np.sort(as_finite_array(data))
    n = len(xs)
    g = math.floor(alpha * n / 2)
    if 2 * g >= n:
        raise ValueError("trimming would remove every value")
    kept = xs[g:n - g]
    m = float(np.mean(kept))
    if not math.isfinite(m):
        m = float(np.mean(kept / 2)) * 2
    return min(max(m, float(kept[0])), float(kept[-1]))
