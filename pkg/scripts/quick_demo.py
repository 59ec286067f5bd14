#!/usr/bin/env python3
"""Small end-to-end demo: a scaled-down sweep on two functions.

Runs in well under a minute and prints the per-cell summaries the full
harness would produce, so it doubles as a smoke check after changes.

    python scripts/quick_demo.py [out_dir]
"""

import json
import sys
import tempfile

from kbsga.experiment import load_config, run_experiment

CONFIG = {
    "problem": ["paraboloid", "rastrigin"],
    "dims": [2],
    "operators": [["alpha_kbs", "sm"], ["alpha_kbs", "gm"], ["blx", "sm"], ["sbx", "gm"]],
    "runs": 5,
    "generations": 300,
    "population_size": 100,
    "pool_size": 100,
    "master_seed": 7,
}


def main() -> int:
    out_dir = sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="kbsga-demo-")
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump({**CONFIG, "out_dir": out_dir}, fh)
        cfg_path = fh.name
    outputs = run_experiment(load_config(cfg_path), threads=2)
    print("\noutputs:")
    for name, path in sorted(outputs.items()):
        print(f"  {name}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
