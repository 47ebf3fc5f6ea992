"""
``bench`` command line entry point.

    bench sweep --config sweep.cfg [--trials N] [--seed S] [--out results.csv]
    bench timing --n 100,1000,10000 --trials 1000 --out timing.csv
    bench table1 | fig3 | fig4 [--trials N] [--seed S] [--out results.csv]

CSV goes to ``--out`` (or stdout when omitted); progress goes to stderr.
Exit status: 0 on success, 1 for configuration errors, 2 for I/O errors.
"""

import argparse
import logging
import sys
from pathlib import Path

from . import bench

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _csv_list(parse):
    def convert(text):
        try:
            return parse(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return convert


def build_parser():
    parser = _Parser(prog="bench", description="RODIAN accuracy and timing benchmarks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="Monte-Carlo accuracy sweep from a config file")
    sweep.add_argument("--config", help="flat key = value config file")
    sweep.add_argument("--n", type=_csv_list(bench._ints))
    sweep.add_argument("--sigma", type=_csv_list(bench._floats))
    sweep.add_argument("--outlier-ratio", type=_csv_list(bench._floats))
    sweep.add_argument("--outlier-model", choices=bench.OUTLIER_MODELS)
    sweep.add_argument("--outlier-sigma", type=float)
    sweep.add_argument("--estimators", type=_csv_list(bench._names))
    sweep.add_argument("--range-lo", type=float)
    sweep.add_argument("--range-hi", type=float)
    _common(sweep)

    timing = sub.add_parser("timing", help="median runtime of median, LMedS and RODIAN")
    timing.add_argument("--n", type=_csv_list(bench._ints), required=True)
    timing.add_argument("--warmup", type=int, default=10)
    timing.add_argument("--lmeds-max-n", type=int, default=5000,
                        help="skip LMedS above this size (default: %(default)s)")
    _common(timing, default_trials=1000)

    for name, fn in bench.PRESETS.items():
        p = sub.add_parser(name, help=fn.__doc__.splitlines()[0])
        if name == "fig4":
            p.add_argument("--outlier-sigma", type=float, default=8.0)
        _common(p)
    return parser


def _common(p, default_trials=None):
    p.add_argument("--trials", type=int, default=default_trials)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("-q", "--quiet", action="store_true", help="no progress output")


def _sweep_configs(args):
    overrides = dict(n=args.n, sigma=args.sigma, outlier_ratio=args.outlier_ratio,
                     outlier_model=args.outlier_model, outlier_sigma=args.outlier_sigma,
                     estimators=args.estimators, trials=args.trials,
                     base_seed=args.seed, output_path=args.out,
                     range_lo=args.range_lo, range_hi=args.range_hi)
    if args.config:
        return [bench.load_config(args.config, **overrides)]
    return [bench.SweepConfig(**{k: v for k, v in overrides.items() if v is not None})]


def _run(args):
    if args.command == "timing":
        records = bench.run_timing(args.n, args.trials, args.seed or 0,
                                   warmup=args.warmup, lmeds_max_n=args.lmeds_max_n)
        return records, args.out
    if args.command == "sweep":
        configs = _sweep_configs(args)
    else:
        kwargs = {k: v for k, v in (("trials", args.trials), ("base_seed", args.seed),
                                    ("output_path", args.out)) if v is not None}
        if args.command == "fig4":
            kwargs["outlier_sigma"] = args.outlier_sigma
        configs = bench.PRESETS[args.command](**kwargs)
    records = []
    for config in configs:
        records.extend(bench.run_sweep(config))
    return records, configs[0].output_path


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr, force=True)
    try:
        out = getattr(args, "out", None)
        # fail before a long run rather than after it
        if out is not None and not Path(out).resolve().parent.is_dir():
            raise FileNotFoundError(f"no such directory for {out!r}")
        records, out = _run(args)
        if out is None:
            bench.write_csv(records, sys.stdout)
        else:
            bench.emit_csv(records, out)
    except bench.ConfigError as exc:
        print(f"bench: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"bench: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
