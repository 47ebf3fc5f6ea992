"""
Running a sweep and saving it as CSV
====================================

The same engine sits behind the ``bench`` command.  Here it runs a small
accuracy sweep plus a timing pass and writes both tables next to this file.
"""

from pathlib import Path

from rodian.bench import SweepConfig, emit_csv, read_csv, run_sweep, run_timing

here = Path(__file__).parent

accuracy = run_sweep(SweepConfig(n=(100, 300), sigma=(2.0, 8.0), outlier_ratio=(0.2, 0.6),
                                 estimators=("rodian", "median"), trials=100))
emit_csv(accuracy, here / "accuracy.csv")

timing = run_timing([100, 1000, 10000], trials=30)
emit_csv(timing, here / "timing.csv")

for r in read_csv(here / "timing.csv"):
    print(f"{r.estimator:>7} n={r.n:<6} {r.median_runtime_ms:9.4f} ms")
print(f"wrote {len(accuracy)} accuracy rows and {len(timing)} timing rows")
