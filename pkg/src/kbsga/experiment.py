"""Config-driven experiment harness.

A JSON config describes a sweep over (problem x dimension x operator
pair); every cell is replicated ``runs`` times with child seeds derived
from the master seed, so results are reproducible bit-for-bit regardless
of worker count or scheduling order.

Outputs per invocation, written to the output directory:

* ``runs.csv``     one row per run:
  ``problem,dim,recomb,mutation,run_index,seed,first_hit,final_value``
* ``summary.csv``  one row per cell:
  ``problem,dim,recomb,mutation,runs,success_rate,mean_runtime_eq4,``
  ``mean_runtime_successful,mean_final,std_final``
* ``dataset_d{d}.txt`` and ``lloyd.csv`` for clustering sweeps: the shared
  point cloud and one row per single-start baseline restart.

``mean_runtime_eq4`` divides the summed successful first-hit generations
by all runs; ``mean_runtime_successful`` divides by successes only (empty
when there were none).
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .core import Bounds, ConfigError
from .engine import GaConfig, run_ga
from .objectives import (
    KMEANS_K,
    Dataset,
    benchmark_problem,
    generate_dataset,
    kmeans_objective,
    kmeans_problem,
    lloyd_steps,
    save_dataset,
    FUNCTIONS,
)
from .operators import (
    MUTATION_OPERATORS,
    RECOMBINATION_OPERATORS,
    MutationParams,
    RecombinationParams,
)
from .rng import derive_seed, make_stream
from .stats import mann_whitney_u, summarize_hits

__all__ = [
    "ExperimentConfig",
    "KmeansSettings",
    "load_config",
    "run_experiment",
    "compare_runs",
    "RUNS_HEADER",
    "SUMMARY_HEADER",
    "COMPARE_HEADER",
]

KMEANS_PROBLEM = f"kmeans{KMEANS_K}"

RUNS_HEADER = ["problem", "dim", "recomb", "mutation", "run_index", "seed", "first_hit", "final_value"]
SUMMARY_HEADER = [
    "problem", "dim", "recomb", "mutation", "runs", "success_rate",
    "mean_runtime_eq4", "mean_runtime_successful", "mean_final", "std_final",
]
COMPARE_HEADER = [
    "problem", "dim", "recomb_a", "mutation_a", "recomb_b", "mutation_b",
    "n_a", "n_b", "u", "z", "p", "significant",
]

# spawn_key namespaces for seed derivation
_NS_RUN = 0
_NS_DATASET = 1
_NS_LLOYD = 2


@dataclass
class KmeansSettings:
    """Dataset and baseline knobs for the clustering problem."""

    points: int = 100
    low: float = 0.0
    high: float = 10.0
    lloyd_restarts: int = 10
    lloyd_max_iter: int = 100


@dataclass
class ExperimentConfig:
    """One sweep: problems x dims x operator pairs, replicated ``runs`` times."""

    problems: list[str]
    dims: list[int]
    operators: list[tuple[str, str]]
    runs: int = 20
    generations: int = 5000
    population_size: int = 400
    pool_size: int = 400
    epsilon: float | None = None
    master_seed: int = 0
    out_dir: str = "results"
    recombination: RecombinationParams = field(default_factory=RecombinationParams)
    mutation: MutationParams = field(default_factory=MutationParams)
    kmeans: KmeansSettings = field(default_factory=KmeansSettings)

    def validate(self) -> None:
        if not self.problems:
            raise ConfigError("config needs at least one problem")
        for p in self.problems:
            if p != KMEANS_PROBLEM and p not in FUNCTIONS:
                raise ConfigError(
                    f"unknown problem {p!r}; choose from {sorted(FUNCTIONS) + [KMEANS_PROBLEM]}"
                )
        if not self.dims or any(int(d) < 1 for d in self.dims):
            raise ConfigError(f"dims must be positive integers, got {self.dims}")
        if not self.operators:
            raise ConfigError("config needs at least one (recombination, mutation) pair")
        for rec, mut in self.operators:
            if rec not in RECOMBINATION_OPERATORS:
                raise ConfigError(f"unknown recombination operator {rec!r}")
            if mut not in MUTATION_OPERATORS:
                raise ConfigError(f"unknown mutation operator {mut!r}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.kmeans.points <= KMEANS_K:
            raise ConfigError(f"kmeans dataset needs more than {KMEANS_K} points")
        if self.kmeans.lloyd_restarts < 1 or self.kmeans.lloyd_max_iter < 1:
            raise ConfigError("lloyd_restarts and lloyd_max_iter must be >= 1")

    def cells(self) -> list[tuple[str, int, str, str]]:
        """Cell tuples in deterministic enumeration order."""
        return [
            (problem, int(dim), rec, mut)
            for problem in self.problems
            for dim in self.dims
            for rec, mut in self.operators
        ]


def _require_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")


def load_config(path) -> ExperimentConfig:
    """Parse and validate a JSON experiment config."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    _require_keys(
        raw,
        {
            "problem", "dims", "operators", "runs", "generations", "population_size",
            "pool_size", "epsilon", "master_seed", "out_dir", "recombination",
            "mutation", "kmeans",
        },
        "config",
    )
    problem = raw.get("problem")
    if isinstance(problem, str):
        problems = [problem]
    elif isinstance(problem, list) and all(isinstance(p, str) for p in problem):
        problems = list(problem)
    else:
        raise ConfigError("'problem' must be a function name or a list of them")
    operators = []
    for pair in raw.get("operators", []):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ConfigError(f"operator entries must be [recombination, mutation], got {pair!r}")
        operators.append((str(pair[0]), str(pair[1])))

    rec_raw = dict(raw.get("recombination", {}))
    _require_keys(
        rec_raw, {"alpha", "blx_alpha", "eta", "k_swaps", "sigma_sq", "sbx_single_beta"},
        "recombination",
    )
    mut_raw = dict(raw.get("mutation", {}))
    _require_keys(mut_raw, {"per_gene_rate"}, "mutation")
    km_raw = dict(raw.get("kmeans", {}))
    _require_keys(km_raw, {"points", "low", "high", "lloyd_restarts", "lloyd_max_iter"}, "kmeans")

    config = ExperimentConfig(
        problems=problems,
        dims=[int(d) for d in raw.get("dims", [])],
        operators=operators,
        runs=int(raw.get("runs", 20)),
        generations=int(raw.get("generations", 5000)),
        population_size=int(raw.get("population_size", 400)),
        pool_size=int(raw.get("pool_size", 400)),
        epsilon=None if raw.get("epsilon") is None else float(raw["epsilon"]),
        master_seed=int(raw.get("master_seed", 0)),
        out_dir=str(raw.get("out_dir", "results")),
        recombination=RecombinationParams(**rec_raw),
        mutation=MutationParams(**mut_raw),
        kmeans=KmeansSettings(**km_raw),
    )
    config.validate()
    return config


@dataclass
class RunTask:
    """Everything one worker needs to execute a single GA run."""

    problem: str
    dim: int
    recomb: str
    mutation: str
    run_index: int
    seed: int
    ga: GaConfig
    dataset_seed: int | None = None  # clustering only
    kmeans: KmeansSettings | None = None


@dataclass
class RunRow:
    problem: str
    dim: int
    recomb: str
    mutation: str
    run_index: int
    seed: int
    first_hit: int | None
    final_value: float


def _build_problem(task: RunTask):
    if task.problem == KMEANS_PROBLEM:
        km = task.kmeans
        data = generate_dataset(km.points, task.dim, task.dataset_seed, km.low, km.high)
        return kmeans_problem(data, KMEANS_K, Bounds(km.low, km.high))
    return benchmark_problem(task.problem, task.dim)


def _execute_run(task: RunTask) -> RunRow:
    record = run_ga(task.ga, _build_problem(task), task.seed)
    return RunRow(
        problem=task.problem,
        dim=task.dim,
        recomb=task.recomb,
        mutation=task.mutation,
        run_index=task.run_index,
        seed=task.seed,
        first_hit=record.first_hit_generation,
        final_value=record.final_best_value,
    )


def _build_tasks(config: ExperimentConfig) -> list[RunTask]:
    tasks = []
    for cell_index, (problem, dim, rec, mut) in enumerate(config.cells()):
        ga = GaConfig(
            population_size=config.population_size,
            pool_size=config.pool_size,
            generations=config.generations,
            recombination=rec,
            recombination_params=replace(config.recombination),
            mutation=mut,
            mutation_params=replace(config.mutation),
            epsilon=config.epsilon,
        )
        for run_index in range(config.runs):
            tasks.append(
                RunTask(
                    problem=problem,
                    dim=dim,
                    recomb=rec,
                    mutation=mut,
                    run_index=run_index,
                    seed=derive_seed(config.master_seed, _NS_RUN, cell_index, run_index),
                    ga=ga,
                    dataset_seed=(
                        derive_seed(config.master_seed, _NS_DATASET, dim)
                        if problem == KMEANS_PROBLEM
                        else None
                    ),
                    kmeans=config.kmeans if problem == KMEANS_PROBLEM else None,
                )
            )
    return tasks


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))  # shortest round-trip form, also for numpy scalars
    return str(value)


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _lloyd_baseline(config: ExperimentConfig, dim: int, data: Dataset) -> list[tuple]:
    """Single-start baseline restarts on the shared dataset."""
    rows = []
    for restart in range(config.kmeans.lloyd_restarts):
        seed = derive_seed(config.master_seed, _NS_LLOYD, dim, restart)
        rng = make_stream(seed)
        cents = None
        for cents, _, _ in lloyd_steps(data, KMEANS_K, rng, config.kmeans.lloyd_max_iter):
            pass
        objective = kmeans_objective(cents.ravel(), data, KMEANS_K)
        rows.append((KMEANS_PROBLEM, dim, restart, seed, objective))
    return rows


def run_experiment(config: ExperimentConfig, threads: int = 1, log=print) -> dict[str, str]:
    """Execute a sweep and write its CSV outputs.

    Returns a mapping of logical output names to file paths. Results are
    identical for any ``threads`` value; workers only affect wall time.
    """
    config.validate()
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")
    os.makedirs(config.out_dir, exist_ok=True)

    tasks = _build_tasks(config)
    log(f"running {len(config.cells())} cells x {config.runs} runs "
        f"({len(tasks)} GA runs) on {threads} worker(s)")
    if threads == 1:
        rows = [_execute_run(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_execute_run, tasks, chunksize=1))

    cell_order = {cell: i for i, cell in enumerate(config.cells())}
    rows.sort(key=lambda r: (cell_order[(r.problem, r.dim, r.recomb, r.mutation)], r.run_index))

    outputs = {}
    runs_path = os.path.join(config.out_dir, "runs.csv")
    write_csv(
        runs_path,
        RUNS_HEADER,
        [
            (r.problem, r.dim, r.recomb, r.mutation, r.run_index, r.seed, r.first_hit, r.final_value)
            for r in rows
        ],
    )
    outputs["runs"] = runs_path

    summary_rows = []
    for cell in config.cells():
        cell_rows = [r for r in rows if (r.problem, r.dim, r.recomb, r.mutation) == cell]
        s = summarize_hits([r.first_hit for r in cell_rows], [r.final_value for r in cell_rows])
        summary_rows.append(
            cell + (s.run_count, s.success_rate, s.mean_runtime_all,
                    s.mean_runtime_successful, s.mean_final_value, s.std_final_value)
        )
        problem, dim, rec, mut = cell
        m_succ = "-" if s.mean_runtime_successful is None else f"{s.mean_runtime_successful:.6g}"
        log(f"  {problem} n={dim} {rec}+{mut}: P={s.success_rate:.6g} "
            f"M_succ={m_succ} mean_final={s.mean_final_value:.6g}")
    summary_path = os.path.join(config.out_dir, "summary.csv")
    write_csv(summary_path, SUMMARY_HEADER, summary_rows)
    outputs["summary"] = summary_path

    if KMEANS_PROBLEM in config.problems:
        lloyd_rows = []
        for dim in config.dims:
            data = generate_dataset(
                config.kmeans.points, dim,
                derive_seed(config.master_seed, _NS_DATASET, dim),
                config.kmeans.low, config.kmeans.high,
            )
            ds_path = os.path.join(config.out_dir, f"dataset_d{dim}.txt")
            save_dataset(data, ds_path)
            outputs[f"dataset_d{dim}"] = ds_path
            lloyd_rows.extend(_lloyd_baseline(config, dim, data))
        lloyd_path = os.path.join(config.out_dir, "lloyd.csv")
        write_csv(lloyd_path, ["problem", "dim", "restart_index", "seed", "objective"], lloyd_rows)
        outputs["lloyd"] = lloyd_path
        for dim in config.dims:
            vals = [r[4] for r in lloyd_rows if r[1] == dim]
            log(f"  {KMEANS_PROBLEM} n={dim} lloyd baseline: best={min(vals):.6g} "
                f"mean={sum(vals) / len(vals):.6g} over {len(vals)} restarts")

    return outputs


# ---------------------------------------------------------------------------
# significance comparison


def _read_runs(path) -> dict[tuple[str, int], dict]:
    """Group a runs.csv by (problem, dim); each group must hold one operator pair."""
    groups: dict[tuple[str, int], dict] = {}
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RUNS_HEADER:
            raise ConfigError(f"{path} does not look like a runs.csv (header {reader.fieldnames})")
        for row in reader:
            key = (row["problem"], int(row["dim"]))
            ops = (row["recomb"], row["mutation"])
            grp = groups.setdefault(key, {"ops": ops, "first_hit": [], "final_value": []})
            if grp["ops"] != ops:
                raise ConfigError(
                    f"{path}: cell {key} holds multiple operator pairs "
                    f"({grp['ops']} and {ops}); split the sweep per pair before comparing"
                )
            grp["first_hit"].append(int(row["first_hit"]) if row["first_hit"] else None)
            grp["final_value"].append(float(row["final_value"]))
    return groups


def compare_runs(path_a, path_b, metric: str = "final_value", alpha: float = 0.05):
    """Per-cell rank tests between two runs.csv files.

    Cells are matched on (problem, dim). For ``metric='first_hit'``,
    unsuccessful runs enter as +infinity (worse than any success). Returns
    (result rows, skipped cell labels); raises if no cells are shared.
    """
    if metric not in ("final_value", "first_hit"):
        raise ConfigError(f"metric must be 'final_value' or 'first_hit', got {metric!r}")
    runs_a = _read_runs(path_a)
    runs_b = _read_runs(path_b)
    shared = sorted(set(runs_a) & set(runs_b))
    skipped = sorted(f"{p} n={d}" for p, d in set(runs_a) ^ set(runs_b))
    if not shared:
        raise ConfigError("the two files share no (problem, dim) cells")

    def sample(grp):
        if metric == "final_value":
            return grp["final_value"]
        return [float("inf") if t is None else float(t) for t in grp["first_hit"]]

    results = []
    for key in shared:
        a, b = runs_a[key], runs_b[key]
        test = mann_whitney_u(sample(a), sample(b))
        results.append(
            key + a["ops"] + b["ops"]
            + (len(sample(a)), len(sample(b)), test.u, test.z, test.p, test.p < alpha)
        )
    return results, skipped


def format_compare_table(results, skipped, metric: str) -> str:
    """Human-readable significance table."""
    out = io.StringIO()
    out.write(f"Mann-Whitney U on {metric} (negative z: first file smaller)\n")
    out.write(f"{'cell':<28}{'A':<16}{'B':<16}{'U':>8}{'z':>9}{'p':>10}  sig@0.05\n")
    for problem, dim, ra, ma, rb, mb, _na, _nb, u, z, p, sig in results:
        cell = f"{problem} n={dim}"
        out.write(
            f"{cell:<28}{ra + '+' + ma:<16}{rb + '+' + mb:<16}"
            f"{u:>8.1f}{z:>9.3f}{p:>10.4f}  {'yes' if sig else 'no'}\n"
        )
    for label in skipped:
        out.write(f"skipped (missing from one file): {label}\n")
    return out.getvalue()
