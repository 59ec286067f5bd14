#!/usr/bin/env python3
"""Generate (and optionally run) the full benchmark-sweep configs.

Covers the complete protocol: six test functions plus the 4-means
clustering problem, dimensions {2, 5, 10, 20, 50}, all eight
recombination/mutation pairs, 20 runs of 5000 generations per cell.
One config file is written per problem so sweeps can be scheduled (and
later compared) independently.

    python scripts/full_sweep.py configs/            # write configs only
    python scripts/full_sweep.py configs/ --run --threads 8

The full sweep is hundreds of CPU-hours; run selected configs, or trim
dims/runs, unless you have a cluster-sized machine.
"""

import argparse
import json
import os

from kbsga.experiment import load_config, run_experiment

PROBLEMS = ["paraboloid", "rosenbrock", "ackley", "rastrigin", "schwefel", "griewangk", "kmeans4"]
DIMS = [2, 5, 10, 20, 50]
OPERATORS = [
    [rec, mut]
    for rec in ("alpha_kbs", "beta_kbs", "blx", "sbx")
    for mut in ("sm", "gm")
]


def make_config(problem: str, out_root: str, master_seed: int) -> dict:
    return {
        "problem": problem,
        "dims": DIMS,
        "operators": OPERATORS,
        "runs": 20,
        "generations": 5000,
        "population_size": 400,
        "pool_size": 400,
        "epsilon": None,
        "master_seed": master_seed,
        "out_dir": os.path.join(out_root, problem),
        "recombination": {"alpha": 0.4, "blx_alpha": 0.5, "eta": 2.0, "sigma_sq": 4.0},
        "kmeans": {"points": 100, "low": 0.0, "high": 10.0, "lloyd_restarts": 10},
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("config_dir", help="directory to write the per-problem configs")
    parser.add_argument("--results", default="results", help="root of the result directories")
    parser.add_argument("--seed", type=int, default=20259, help="master seed")
    parser.add_argument("--run", action="store_true", help="execute each config after writing it")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    os.makedirs(args.config_dir, exist_ok=True)
    for problem in PROBLEMS:
        path = os.path.join(args.config_dir, f"{problem}.json")
        with open(path, "w") as fh:
            json.dump(make_config(problem, args.results, args.seed), fh, indent=2)
        print(f"wrote {path}")
        if args.run:
            run_experiment(load_config(path), threads=args.threads)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
