"""
Seeded synthetic data: Gaussian inliers contaminated by outliers.

Every generator is a ``numpy.random.Generator`` over the counter-based
Philox bit generator, so a seed reproduces the same stream on any platform.
Draws falling outside ``[range_lo, range_hi]`` are rejected and redrawn
(never clipped).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "OUTLIER_MODELS",
    "ScenarioSpec",
    "make_rng",
    "outlier_count",
    "draw_scenario_mean",
    "generate",
    "trial_spec",
]

OUTLIER_MODELS = ("uniform", "uniform_plus_gaussian", "gaussian")

# margin, in standard deviations, kept between a drawn mean and the range ends
MEAN_MARGIN_SIGMAS = 3.0


def make_rng(seed):
    """Philox-backed generator for `seed` (an int or a sequence of ints)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def outlier_count(ratio, n):
    """``ratio * n`` rounded half up."""
    return int(math.floor(ratio * n + 0.5))


@dataclass(frozen=True)
class ScenarioSpec:
    n: int
    inlier_mean: float
    inlier_sigma: float
    outlier_ratio: float
    outlier_model: str = "uniform"
    outlier_mean: Optional[float] = None
    outlier_sigma: Optional[float] = None
    range_lo: float = 0.0
    range_hi: float = 100.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be a positive integer")
        if not self.range_lo < self.range_hi:
            raise ValueError("range_lo must be below range_hi")
        if not self.range_lo < self.inlier_mean < self.range_hi:
            raise ValueError("inlier_mean must lie strictly inside the range")
        if not self.inlier_sigma > 0:
            raise ValueError("inlier_sigma must be positive")
        if not 0 <= self.outlier_ratio <= 1:
            raise ValueError("outlier_ratio must lie in [0, 1]")
        if self.outlier_model not in OUTLIER_MODELS:
            raise ValueError(f"unknown outlier_model {self.outlier_model!r}")
        needs_gaussian = self.outlier_model != "uniform"
        given = (self.outlier_mean is not None, self.outlier_sigma is not None)
        if needs_gaussian and not all(given):
            raise ValueError(f"{self.outlier_model} outliers need outlier_mean "
                             "and outlier_sigma")
        if not needs_gaussian and any(given):
            raise ValueError("uniform outliers take no outlier_mean/outlier_sigma")
        if needs_gaussian:
            if not self.range_lo < self.outlier_mean < self.range_hi:
                raise ValueError("outlier_mean must lie strictly inside the range")
            if not self.outlier_sigma > 0:
                raise ValueError("outlier_sigma must be positive")

    @property
    def n_outliers(self):
        return outlier_count(self.outlier_ratio, self.n)

    @property
    def n_inliers(self):
        return self.n - self.n_outliers


def _truncated_normal(rng, mean, sigma, size, lo, hi):
    out = np.empty(size)
    filled = 0
    while filled < size:
        draw = rng.normal(mean, sigma, size - filled)
        draw = draw[(draw >= lo) & (draw <= hi)]
        out[filled:filled + len(draw)] = draw
        filled += len(draw)
    return out


def draw_scenario_mean(rng, sigma=0.0, lo=0.0, hi=100.0):
    """
    Uniform draw of a distribution mean from ``(lo + 3 sigma, hi - 3 sigma)``.

    The margin keeps most of a N(mean, sigma^2) cloud inside the range, so
    rejection does not noticeably truncate it.
    """
    a, b = lo + MEAN_MARGIN_SIGMAS * sigma, hi - MEAN_MARGIN_SIGMAS * sigma
    if not a < b:
        raise ValueError(f"sigma={sigma} leaves no room for a mean in ({lo}, {hi})")
    while True:
        mu = float(rng.uniform(a, b))
        if a < mu < b:
            return mu


def generate(spec):
    """
    Draw one data set for `spec`.

    Returns
    -------
    data : ndarray, shape (spec.n,)
        Inliers and outliers in random order.
    true_mean : float
        The inlier mean, i.e. the value estimators try to recover.
    """
    rng = make_rng(spec.seed)
    lo, hi = spec.range_lo, spec.range_hi
    n_out = spec.n_outliers
    parts = [_truncated_normal(rng, spec.inlier_mean, spec.inlier_sigma,
                               spec.n_inliers, lo, hi)]
    if spec.outlier_model == "uniform":
        n_gauss = 0
    elif spec.outlier_model == "gaussian":
        n_gauss = n_out
    else:
        n_gauss = n_out // 2
    parts.append(rng.uniform(lo, hi, n_out - n_gauss))
    if n_gauss:
        parts.append(_truncated_normal(rng, spec.outlier_mean, spec.outlier_sigma,
                                       n_gauss, lo, hi))
    data = rng.permutation(np.concatenate(parts))
    return data, float(spec.inlier_mean)


def trial_spec(n, sigma, outlier_ratio, seed, outlier_model="uniform",
               outlier_sigma=None, range_lo=0.0, range_hi=100.0):
    """
    Scenario of one Monte-Carlo trial with freshly drawn means.

    The means come from a stream derived from, but independent of, `seed`;
    the data itself is generated from `seed`.  The inlier mean is drawn
    first, so scenarios that differ only in their outlier model share it.
    The outlier mean gets no margin: it may sit right at a range end, where
    rejection squeezes the outlier cloud into a dense pile.
    """
    rng = make_rng([seed, 1])
    mu = draw_scenario_mean(rng, sigma, range_lo, range_hi)
    outlier_mean = None
    if outlier_model != "uniform":
        if outlier_sigma is None:
            raise ValueError(f"{outlier_model} outliers need outlier_sigma")
        outlier_mean = draw_scenario_mean(rng, 0.0, range_lo, range_hi)
    else:
        outlier_sigma = None
    return ScenarioSpec(n=n, inlier_mean=mu, inlier_sigma=sigma,
                        outlier_ratio=outlier_ratio, outlier_model=outlier_model,
                        outlier_mean=outlier_mean, outlier_sigma=outlier_sigma,
                        range_lo=range_lo, range_hi=range_hi, seed=seed)
