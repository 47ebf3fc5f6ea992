"""
Histogram machinery shared by the RODIAN estimator and the fixed-histogram
baseline.

All histograms live on the unit interval: the input is sorted and mapped
affinely onto [0, 1], so a single table of bin edges can be precomputed
once and reused for every data set.  Bins are half-open ``[lo, hi)``
except the last one of each histogram, which also owns the value 1.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "NormalizationRecord",
    "NormalizedSample",
    "BinLookupTable",
    "HistogramSummary",
    "as_finite_array",
    "normalize",
    "unnormalize",
    "build_lookup_table",
    "cached_lookup_table",
    "region_of",
    "assign_bins",
    "log_probability_of_randomness",
    "summarize_counts",
    "summarize_histogram",
]


@dataclass(frozen=True)
class NormalizationRecord:
    """Affine map between input units and the unit interval."""

    x_min: float
    x_max: float

    @property
    def degenerate(self):
        """True when every input value was identical."""
        return self.x_max == self.x_min

    def forward(self, x):
        x = np.asarray(x, dtype=float)
        if self.degenerate:
            return np.zeros_like(x)
        span = self.x_max - self.x_min
        if math.isfinite(span):
            return (x - self.x_min) / span
        # span overflowed; halve everything first
        return (x / 2 - self.x_min / 2) / (self.x_max / 2 - self.x_min / 2)

    def inverse(self, y):
        return unnormalize(y, self)


@dataclass(frozen=True)
class NormalizedSample:
    values: np.ndarray
    record: NormalizationRecord

    @property
    def n(self):
        return len(self.values)


@dataclass(frozen=True, eq=False)
class BinLookupTable:
    """
    Precomputed edge -> bin-index map for a set of equal-width histograms.

    Attributes
    ----------
    bin_counts : tuple of int
        The number of bins of each histogram, in the caller's order.
    edges : ndarray, shape (R + 1,)
        Sorted union of ``j / b`` over all ``b`` in `bin_counts`.
    region_indices : ndarray, shape (R, len(bin_counts))
        ``region_indices[r, i]`` is the bin of histogram ``i`` that contains
        the open region ``(edges[r], edges[r + 1])``.
    """

    bin_counts: tuple
    edges: np.ndarray
    region_indices: np.ndarray

    @property
    def n_regions(self):
        return len(self.edges) - 1


@dataclass(frozen=True)
class HistogramSummary:
    b: int
    counts: np.ndarray
    k: int
    tallest_index: int
    tie: bool
    log_p: float


def as_finite_array(data):
    """Return `data` as a 1-d float array, rejecting empty or non-finite input."""
    x = np.asarray(data, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empty data")
    if not np.isfinite(x).all():
        raise ValueError("data contains NaN or infinite values")
    return x


def normalize(data, presorted=False):
    """
    Sort `data` and map it affinely onto [0, 1].

    A constant input maps to all zeros; the returned record then has
    ``degenerate == True``.  Pass ``presorted=True`` to skip the sort when
    `data` is already an ascending finite float array.

    >>> s = normalize([5, 1, 3])
    >>> s.values.tolist(), s.record
    ([0.0, 0.5, 1.0], NormalizationRecord(x_min=1.0, x_max=5.0))
    """
    x = np.asarray(data, dtype=float) if presorted else np.sort(as_finite_array(data))
    record = NormalizationRecord(float(x[0]), float(x[-1]))
    y = record.forward(x)
    # rounding can never push past the ends, but make it a hard guarantee
    np.clip(y, 0.0, 1.0, out=y)
    return NormalizedSample(y, record)


def unnormalize(y, record):
    """Map a unit-interval value back to input units, clamped to the data range."""
    lo, hi = record.x_min, record.x_max
    if record.degenerate:
        return lo
    span = hi - lo
    if math.isfinite(span):
        x = lo + y * span
    else:
        x = lo * (1.0 - y) + hi * y
    return float(min(max(x, lo), hi))


def build_lookup_table(bin_counts):
    """
    Precompute the region table for the histograms with the given bin counts.

    The edges are deduplicated with exact rational arithmetic, so e.g.
    ``1/2`` from the 2-bin and ``2/4`` from the 4-bin histogram collapse to
    one edge.  Bin indices are derived from each region's midpoint, which
    is exact because no edge of any histogram lies strictly inside a region.
    """
    bin_counts = tuple(int(b) for b in bin_counts)
    if not bin_counts:
        raise ValueError("bin_counts must not be empty")
    if any(b < 1 for b in bin_counts):
        raise ValueError("bin counts must be positive")
    if len(set(bin_counts)) != len(bin_counts):
        raise ValueError("bin counts must be distinct")

    exact = sorted({Fraction(j, b) for b in bin_counts for j in range(b + 1)})
    edges = np.array([float(e) for e in exact])
    mids = [(lo + hi) / 2 for lo, hi in zip(exact[:-1], exact[1:])]
    dtype = np.min_scalar_type(max(bin_counts))
    region_indices = np.array(
        [[min(math.floor(m * b), b - 1) for b in bin_counts] for m in mids],
        dtype=dtype,
    ).reshape(len(mids), len(bin_counts))
    edges.flags.writeable = False
    region_indices.flags.writeable = False
    return BinLookupTable(bin_counts, edges, region_indices)


@lru_cache(maxsize=64)
def cached_lookup_table(bin_counts):
    """`build_lookup_table` memoized on the (hashable) tuple of bin counts."""
    return build_lookup_table(bin_counts)


def region_of(values, table):
    """Index of the table region holding each unit-interval value."""
    values = np.asarray(values, dtype=float)
    if values.size and (values.min() < 0.0 or values.max() > 1.0):
        raise ValueError("normalized values must lie in [0, 1]")
    r = np.searchsorted(table.edges, values, side="right") - 1
    # 1.0 sits on the last edge and belongs to the last region
    np.minimum(r, table.n_regions - 1, out=r)
    return r


def assign_bins(sample, table):
    """
    Bin index of every value in every histogram of `table`.

    Parameters
    ----------
    sample : NormalizedSample or array_like
        Values in [0, 1].
    table : BinLookupTable

    Returns
    -------
    ndarray, shape (n, len(table.bin_counts))
    """
    values = sample.values if isinstance(sample, NormalizedSample) else sample
    return table.region_indices[region_of(values, table)]


def log_probability_of_randomness(n, k, b):
    """
    Natural log of the binomial probability that exactly `k` of `n` points
    uniformly spread over `b` equal bins land in one given bin.

    >>> round(math.exp(log_probability_of_randomness(4, 2, 2)), 12)
    0.375
    """
    n, k, b = int(n), int(k), int(b)
    if b < 1:
        raise ValueError("b must be >= 1")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if b == 1:
        return 0.0 if k == n else -math.inf
    log_comb = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    return log_comb - k * math.log(b) + (n - k) * math.log1p(-1.0 / b)


def summarize_counts(b, counts, n):
    """Summary of a histogram given its bin counts."""
    tallest = int(np.argmax(counts))
    k = int(counts[tallest])
    tie = int(np.count_nonzero(counts == k)) > 1
    return HistogramSummary(b, counts, k, tallest, tie,
                            log_probability_of_randomness(n, k, b))


def summarize_histogram(bin_indices, b, n=None):
    """Counts, tallest bin and its log-probability for one histogram."""
    bin_indices = np.asarray(bin_indices, dtype=np.intp)
    if n is None:
        n = len(bin_indices)
    if bin_indices.size and (bin_indices.min() < 0 or bin_indices.max() >= b):
        raise ValueError("bin index out of range")
    counts = np.bincount(bin_indices, minlength=b)
    return summarize_counts(int(b), counts, int(n))
