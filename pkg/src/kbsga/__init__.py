"""Real-coded genetic algorithm library with k-bit-swap recombination.

Building blocks: deterministic random streams (:mod:`kbsga.rng`), core
population types (:mod:`kbsga.core`), recombination/mutation/selection
operators (:mod:`kbsga.operators`), benchmark and clustering objectives
(:mod:`kbsga.objectives`), the generational GA loop (:mod:`kbsga.engine`),
replication statistics and the Mann-Whitney U test (:mod:`kbsga.stats`),
and the config-driven experiment harness (:mod:`kbsga.experiment`,
:mod:`kbsga.cli`).
"""

from .core import Bounds, ConfigError, Population, Problem, best_of, clamp_to_bounds, init_population
from .engine import GaConfig, RunRecord, default_epsilon, first_hit, run_ga
from .objectives import (
    FUNCTIONS,
    ClusteringSolution,
    Dataset,
    benchmark_problem,
    generate_dataset,
    kmeans_objective,
    kmeans_problem,
    lloyd,
    load_dataset,
    save_dataset,
)
from .operators import (
    MutationParams,
    RecombinationParams,
    alpha_kbs,
    ax_crossover,
    beta_kbs,
    blx_alpha,
    elitist_replacement,
    gaussian_mutation,
    sbx,
    simple_mutation,
    tournament_select,
)
from .rng import child_stream, derive_seed, make_stream
from .stats import ExperimentSummary, RankTestResult, mann_whitney_u, summarize, summarize_hits

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "ConfigError",
    "Population",
    "Problem",
    "best_of",
    "clamp_to_bounds",
    "init_population",
    "GaConfig",
    "RunRecord",
    "default_epsilon",
    "first_hit",
    "run_ga",
    "FUNCTIONS",
    "ClusteringSolution",
    "Dataset",
    "benchmark_problem",
    "generate_dataset",
    "kmeans_objective",
    "kmeans_problem",
    "lloyd",
    "load_dataset",
    "save_dataset",
    "MutationParams",
    "RecombinationParams",
    "alpha_kbs",
    "ax_crossover",
    "beta_kbs",
    "blx_alpha",
    "elitist_replacement",
    "gaussian_mutation",
    "sbx",
    "simple_mutation",
    "tournament_select",
    "child_stream",
    "derive_seed",
    "make_stream",
    "ExperimentSummary",
    "RankTestResult",
    "mann_whitney_u",
    "summarize",
    "summarize_hits",
    "__version__",
]
