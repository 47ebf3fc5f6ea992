"""RODIAN: a robustified median, with baselines and a benchmark harness."""

from .estimators import (
    DEFAULT_BIN_COUNTS,
    EstimatorOutcome,
    RodianConfig,
    alpha_trimmed_mean,
    fixed_histogram_median,
    lmeds,
    median,
    rodian,
)
from .histogram import (
    BinLookupTable,
    HistogramSummary,
    NormalizationRecord,
    NormalizedSample,
    assign_bins,
    build_lookup_table,
    log_probability_of_randomness,
    normalize,
    summarize_histogram,
    unnormalize,
)

__version__ = "0.1.0"
