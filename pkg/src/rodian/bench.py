"""
Monte-Carlo accuracy sweeps and runtime benchmarks.

Trial ``t`` of every sweep cell uses seed ``base_seed + t``, so cells that
share a data distribution also share their data, and results do not depend
on execution order.
"""

import csv
import itertools
import logging
import math
import re
import statistics
import time
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Tuple

from .datagen import OUTLIER_MODELS, generate, trial_spec
from .estimators import (
    alpha_trimmed_mean,
    fixed_histogram_median,
    lmeds,
    median,
    rodian,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "SweepConfig",
    "ExperimentRecord",
    "resolve_estimator",
    "run_sweep",
    "run_timing",
    "write_csv",
    "emit_csv",
    "read_csv",
    "parse_config_text",
    "load_config",
    "PRESETS",
]

log = logging.getLogger(__name__)

CSV_HEADER = ("estimator", "n", "sigma", "outlier_ratio", "outlier_model",
              "trials", "mean_abs_error", "median_runtime_ms")


class ConfigError(ValueError):
    """Invalid sweep configuration; `field` names the offending option."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


_PARAM_RE = re.compile(r"^(fixed_histogram|alpha_trimmed)\(\s*([^()]+?)\s*\)$")


def resolve_estimator(name):
    """
    Map an estimator id to ``(canonical_id, callable)``.

    Recognised ids: ``rodian``, ``median``, ``lmeds``, ``fixed_histogram(b)``
    and ``alpha_trimmed(alpha)``.  The callable maps data to a float.
    """
    name = name.strip()
    simple = {
        "rodian": lambda x: rodian(x).estimate,
        "median": median,
        "lmeds": lmeds,
    }
    if name in simple:
        return name, simple[name]
    m = _PARAM_RE.match(name)
    if not m:
        raise ConfigError("estimators", f"unknown estimator {name!r}")
    kind, arg = m.groups()
    if kind == "fixed_histogram":
        try:
            b = int(arg)
        except ValueError:
            raise ConfigError("estimators", f"bad bin count in {name!r}") from None
        if b < 1:
            raise ConfigError("estimators", f"bin count must be >= 1 in {name!r}")
        return f"fixed_histogram({b})", lambda x: fixed_histogram_median(x, b)
    try:
        alpha = float(arg)
    except ValueError:
        raise ConfigError("estimators", f"bad alpha in {name!r}") from None
    if not 0 <= alpha < 1:
        raise ConfigError("estimators", f"alpha must lie in [0, 1) in {name!r}")
    return f"alpha_trimmed({alpha!r})", lambda x: alpha_trimmed_mean(x, alpha)


@dataclass(frozen=True)
class SweepConfig:
    n: Tuple[int, ...] = (100,)
    sigma: Tuple[float, ...] = (2.0,)
    outlier_ratio: Tuple[float, ...] = (0.0,)
    outlier_model: str = "uniform"
    outlier_sigma: Optional[float] = None
    estimators: Tuple[str, ...] = ("rodian",)
    trials: int = 1000
    base_seed: int = 0
    output_path: Optional[str] = None
    range_lo: float = 0.0
    range_hi: float = 100.0

    def __post_init__(self):
        for axis in ("n", "sigma", "outlier_ratio", "estimators"):
            value = getattr(self, axis)
            if isinstance(value, (str, int, float)):
                value = (value,)
            object.__setattr__(self, axis, tuple(value))
            if not getattr(self, axis):
                raise ConfigError(axis, "must not be empty")
        if any(int(n) != n or n < 1 for n in self.n):
            raise ConfigError("n", "sample sizes must be positive integers")
        if any(not s > 0 for s in self.sigma):
            raise ConfigError("sigma", "must be positive")
        if any(not 0 <= r <= 1 for r in self.outlier_ratio):
            raise ConfigError("outlier_ratio", "must lie in [0, 1]")
        if self.outlier_model not in OUTLIER_MODELS:
            raise ConfigError("outlier_model",
                              f"expected one of {', '.join(OUTLIER_MODELS)}")
        if self.outlier_model != "uniform":
            if self.outlier_sigma is None or not self.outlier_sigma > 0:
                raise ConfigError("outlier_sigma",
                                  f"a positive value is required for "
                                  f"{self.outlier_model} outliers")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError("trials", "must be a positive integer")
        if int(self.base_seed) != self.base_seed or self.base_seed < 0:
            raise ConfigError("seed", "must be a non-negative integer")
        if not self.range_lo < self.range_hi:
            raise ConfigError("range_lo", "must be below range_hi")
        for s in self.sigma:
            if not self.range_lo + 3 * s < self.range_hi - 3 * s:
                raise ConfigError("sigma", f"{s} is too wide for the data range")
        # fail early on unknown estimator ids
        for name in self.estimators:
            resolve_estimator(name)


@dataclass(frozen=True)
class ExperimentRecord:
    estimator: str
    n: int
    sigma: float
    outlier_ratio: float
    outlier_model: str
    trials: int
    mean_abs_error: float
    median_runtime_ms: float = math.nan


def _timed(fn, x):
    t0 = time.perf_counter_ns()
    y = fn(x)
    return y, (time.perf_counter_ns() - t0) / 1e6


def run_sweep(config):
    """
    Mean absolute error of every estimator in every cell of the sweep.

    Cells are the cartesian product ``n x sigma x outlier_ratio``; each runs
    ``config.trials`` trials and every estimator sees the same data.
    """
    estimators = [resolve_estimator(e) for e in config.estimators]
    records = []
    cells = list(itertools.product(config.n, config.sigma, config.outlier_ratio))
    for i, (n, sigma, ratio) in enumerate(cells, 1):
        log.info("cell %d/%d: n=%d sigma=%g outlier_ratio=%g",
                 i, len(cells), n, sigma, ratio)
        errors = [[] for _ in estimators]
        times = [[] for _ in estimators]
        for t in range(config.trials):
            spec = trial_spec(int(n), sigma, ratio, config.base_seed + t,
                              config.outlier_model, config.outlier_sigma,
                              config.range_lo, config.range_hi)
            data, truth = generate(spec)
            for j, (_, fn) in enumerate(estimators):
                est, ms = _timed(fn, data)
                errors[j].append(abs(est - truth))
                times[j].append(ms)
        for j, (name, _) in enumerate(estimators):
            records.append(ExperimentRecord(
                name, int(n), float(sigma), float(ratio), config.outlier_model,
                config.trials, math.fsum(errors[j]) / config.trials,
                statistics.median(times[j])))
    return records


def run_timing(n_values, trials, base_seed=0, estimators=("median", "lmeds", "rodian"),
               sigma=2.0, outlier_ratio=0.5, warmup=10, lmeds_max_n=5000):
    """
    Median wall-clock time per call of each estimator, per sample size.

    Each call gets fresh data from the uniform-outlier protocol; all
    estimators are timed on the same inputs, and data generation is not
    timed.  The first `warmup` calls per size are discarded.  LMedS is
    quadratic, so it is skipped for sizes above `lmeds_max_n`.
    """
    n_values = [int(n) for n in n_values]
    if not n_values:
        raise ConfigError("n", "must not be empty")
    if any(n < 1 for n in n_values):
        raise ConfigError("n", "sample sizes must be positive")
    if int(trials) != trials or trials < 1:
        raise ConfigError("trials", "must be a positive integer")
    if base_seed < 0:
        raise ConfigError("seed", "must be non-negative")
    resolved = [resolve_estimator(e) for e in estimators]
    records = []
    for n in n_values:
        active = [(name, fn) for name, fn in resolved
                  if not (name == "lmeds" and lmeds_max_n is not None and n > lmeds_max_n)]
        if len(active) < len(resolved):
            log.info("n=%d: skipping lmeds (above lmeds_max_n=%d)", n, lmeds_max_n)
        log.info("timing n=%d over %d calls", n, trials)
        errors = {name: [] for name, _ in active}
        times = {name: [] for name, _ in active}
        for t in range(warmup + trials):
            data, truth = generate(trial_spec(n, sigma, outlier_ratio, base_seed + t))
            for name, fn in active:
                est, ms = _timed(fn, data)
                if t >= warmup:
                    errors[name].append(abs(est - truth))
                    times[name].append(ms)
        for name, _ in active:
            records.append(ExperimentRecord(
                name, n, float(sigma), float(outlier_ratio), "uniform", trials,
                math.fsum(errors[name]) / trials, statistics.median(times[name])))
    return records


def _fmt(value):
    return repr(float(value)) if isinstance(value, float) else str(value)


def write_csv(records, fh):
    """Write header and one row per record to the open text stream `fh`."""
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([_fmt(getattr(r, f.name)) for f in fields(ExperimentRecord)])


def emit_csv(records, path):
    """Write `records` to `path` as UTF-8 CSV; an empty list raises and creates no file."""
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_csv(records, fh)


def read_csv(path):
    """Parse a file written by `emit_csv` back into records."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header in {path}")
        return [ExperimentRecord(
            row["estimator"], int(row["n"]), float(row["sigma"]),
            float(row["outlier_ratio"]), row["outlier_model"], int(row["trials"]),
            float(row["mean_abs_error"]), float(row["median_runtime_ms"]))
            for row in reader]


# --- config files -----------------------------------------------------------

_LIST_SPLIT = re.compile(r",\s*(?![^()]*\))")


def _ints(text):
    return tuple(int(v) for v in _LIST_SPLIT.split(text) if v.strip())


def _floats(text):
    return tuple(float(v) for v in _LIST_SPLIT.split(text) if v.strip())


def _names(text):
    return tuple(v.strip() for v in _LIST_SPLIT.split(text) if v.strip())


# file key -> (SweepConfig field, parser)
CONFIG_KEYS = {
    "n": ("n", _ints),
    "sigma": ("sigma", _floats),
    "outlier_ratio": ("outlier_ratio", _floats),
    "outlier_model": ("outlier_model", str.strip),
    "outlier_sigma": ("outlier_sigma", float),
    "estimators": ("estimators", _names),
    "trials": ("trials", int),
    "seed": ("base_seed", int),
    "out": ("output_path", str.strip),
    "range_lo": ("range_lo", float),
    "range_hi": ("range_hi", float),
}


def parse_config_text(text):
    """
    Parse the flat ``key = value`` config format into SweepConfig kwargs.

    Lists are comma separated; ``#`` starts a comment.  Example::

        n = 100, 300
        sigma = 2, 4
        outlier_ratio = 0, 0.1, 0.2
        estimators = rodian, median, fixed_histogram(20)
        trials = 1000
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep:
            raise ConfigError(key.split()[0], f"expected 'key = value' (line {lineno})")
        if key not in CONFIG_KEYS:
            raise ConfigError(key, f"unknown option (line {lineno})")
        name, parse = CONFIG_KEYS[key]
        try:
            values[name] = parse(value)
        except ValueError as exc:
            raise ConfigError(key, f"cannot parse {value.strip()!r}: {exc}") from None
    return values


def load_config(path, **overrides):
    """Read a config file; non-None `overrides` (SweepConfig field names) win."""
    values = parse_config_text(Path(path).read_text(encoding="utf-8"))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return SweepConfig(**values)


# --- published protocols ----------------------------------------------------

_RATIO_GRID = tuple(round(0.1 * i, 1) for i in range(10))
_TABLE1_ESTIMATORS = ("fixed_histogram(5)", "fixed_histogram(10)", "fixed_histogram(20)",
                      "fixed_histogram(30)", "fixed_histogram(50)", "rodian")
_FIG_ESTIMATORS = ("rodian", "median", "lmeds", "fixed_histogram(5)",
                   "fixed_histogram(20)")


def table1_configs(trials=10000, base_seed=0, output_path=None):
    """Both blocks of the fixed-histogram comparison: uniform, then Gaussian outliers."""
    common = dict(n=(100,), sigma=(2.0,), outlier_ratio=_RATIO_GRID[:6],
                  estimators=_TABLE1_ESTIMATORS, trials=trials, base_seed=base_seed,
                  output_path=output_path)
    return [SweepConfig(outlier_model="uniform", **common),
            SweepConfig(outlier_model="gaussian", outlier_sigma=4.0, **common)]


def fig3_configs(trials=1000, base_seed=0, output_path=None):
    """Uniform outliers, n in {100, 300}, inlier sigma in {2, 4, 8, 16}."""
    return [SweepConfig(n=(100, 300), sigma=(2.0, 4.0, 8.0, 16.0),
                        outlier_ratio=_RATIO_GRID, estimators=_FIG_ESTIMATORS,
                        trials=trials, base_seed=base_seed, output_path=output_path)]


def fig4_configs(trials=1000, base_seed=0, output_path=None, outlier_sigma=8.0):
    """Half uniform, half Gaussian outliers, n = 100."""
    return [SweepConfig(n=(100,), sigma=(2.0, 4.0, 8.0, 16.0),
                        outlier_ratio=_RATIO_GRID, outlier_model="uniform_plus_gaussian",
                        outlier_sigma=outlier_sigma, estimators=_FIG_ESTIMATORS,
                        trials=trials, base_seed=base_seed, output_path=output_path)]


PRESETS = {"table1": table1_configs, "fig3": fig3_configs, "fig4": fig4_configs}
