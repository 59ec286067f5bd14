"""Command-line entry points.

``kbsga run <config.json>`` executes a sweep and writes runs.csv /
summary.csv (plus dataset and baseline files for clustering sweeps);
``kbsga compare <runs_a.csv> <runs_b.csv> --metric final_value``
rank-tests two sweeps cell by cell.

Exit codes: 0 success, 2 invalid configuration or usage, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import ConfigError
from .experiment import (
    COMPARE_HEADER,
    compare_runs,
    format_compare_table,
    load_config,
    run_experiment,
    write_csv,
)

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kbsga", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute the sweep described by a JSON config")
    run_p.add_argument("config", help="path to the experiment config (JSON)")
    run_p.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    run_p.add_argument("--seed", type=int, default=None, help="override the config master_seed")
    run_p.add_argument("--out", default=None, help="override the config output directory")

    cmp_p = sub.add_parser("compare", help="Mann-Whitney rank tests between two runs.csv files")
    cmp_p.add_argument("runs_a", help="first runs.csv")
    cmp_p.add_argument("runs_b", help="second runs.csv")
    cmp_p.add_argument(
        "--metric", choices=("final_value", "first_hit"), default="final_value",
        help="per-run value to compare (default final_value)",
    )
    cmp_p.add_argument("--out", default=".", help="directory for compare.csv (default .)")
    return parser


def _cmd_run(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config.master_seed = args.seed
    if args.out is not None:
        config.out_dir = args.out
    outputs = run_experiment(config, threads=args.threads)
    print("wrote " + ", ".join(sorted(outputs.values())))
    return 0


def _cmd_compare(args) -> int:
    results, skipped = compare_runs(args.runs_a, args.runs_b, metric=args.metric)
    print(format_compare_table(results, skipped, args.metric), end="")
    os.makedirs(args.out, exist_ok=True)
    out_path = os.path.join(args.out, "compare.csv")
    write_csv(out_path, COMPARE_HEADER, results)
    print(f"wrote {out_path}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_compare(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
