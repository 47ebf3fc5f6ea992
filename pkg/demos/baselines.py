"""
Comparing RODIAN against the classic robust estimators
======================================================

Mean absolute error over 300 seeded trials as the outlier share grows.
The median and LMedS give way near one half; RODIAN keeps going.
"""

from rodian.bench import SweepConfig, run_sweep

config = SweepConfig(
    n=(100,), sigma=(2.0,), outlier_ratio=(0.0, 0.3, 0.5, 0.6, 0.7, 0.8),
    estimators=("rodian", "median", "lmeds", "alpha_trimmed(0.4)", "fixed_histogram(20)"),
    trials=300,
)
records = run_sweep(config)

names = config.estimators
print("ratio  " + "".join(f"{name:>22}" for name in names))
for ratio in config.outlier_ratio:
    row = {r.estimator: r.mean_abs_error for r in records if r.outlier_ratio == ratio}
    print(f"{ratio:5.1f}  " + "".join(f"{row[name]:22.3f}" for name in names))
