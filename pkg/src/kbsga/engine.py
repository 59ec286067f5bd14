"""Generational GA loop with single-elite preservation and first-hit tracking.

One generation: evaluate, record the best, fill a mating pool by binary
tournament, recombine consecutive pool pairs, mutate and clamp all
offspring, then drop one random offspring in favor of the previous
generation's best. The population size never changes, and a run always
executes its full generation budget (final-value statistics need it).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ConfigError, Problem, best_of, clamp_to_bounds, init_population
from .operators import (
    MutationParams,
    RecombinationParams,
    elitist_replacement,
    make_mutator,
    make_recombiner,
    tournament_select,
)
from .rng import make_stream

__all__ = ["GaConfig", "RunRecord", "TOURNAMENT_SIZE", "default_epsilon", "first_hit", "run_ga"]

TOURNAMENT_SIZE = 2


def default_epsilon(dim: int) -> float:
    """Success tolerance: 0.01 for 2-dimensional problems, 0.1 otherwise."""
    return 0.01 if dim == 2 else 0.1


@dataclass
class GaConfig:
    """Run parameters for one GA configuration.

    ``epsilon`` of None resolves per problem dimension via
    :func:`default_epsilon`. ``recombination_rate`` and ``elite_count``
    exist for schema completeness and are pinned to 1.0 and 1.
    """

    population_size: int = 400
    pool_size: int = 400
    generations: int = 5000
    recombination: str = "alpha_kbs"
    recombination_params: RecombinationParams = field(default_factory=RecombinationParams)
    mutation: str = "gm"
    mutation_params: MutationParams = field(default_factory=MutationParams)
    recombination_rate: float = 1.0
    elite_count: int = 1
    epsilon: float | None = None

    def validate(self, dim: int) -> None:
        if self.population_size < 2:
            raise ConfigError(f"population_size must be >= 2, got {self.population_size}")
        if self.pool_size % 2 != 0 or self.pool_size < 2:
            raise ConfigError(f"pool_size must be even and >= 2, got {self.pool_size}")
        if self.pool_size != self.population_size:
            # offspring become the next population, so the sizes must agree
            # for the population size to stay constant
            raise ConfigError(
                f"pool_size ({self.pool_size}) must equal population_size ({self.population_size})"
            )
        if self.generations < 1:
            raise ConfigError(f"generations must be >= 1, got {self.generations}")
        if self.recombination_rate != 1.0:
            raise ConfigError("recombination_rate is fixed at 1.0 (all pool pairs recombine)")
        if self.elite_count != 1:
            raise ConfigError("elite_count is fixed at 1")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")
        self.recombination_params.validate(dim)
        self.mutation_params.rate_for(dim)

    def resolved_epsilon(self, dim: int) -> float:
        return default_epsilon(dim) if self.epsilon is None else self.epsilon


@dataclass
class RunRecord:
    """Trajectory of one GA run.

    ``best_per_generation`` is non-increasing (the elite always survives);
    ``first_hit_generation`` is the earliest 1-based generation whose best
    value fell strictly below the run's tolerance, or None.
    """

    best_per_generation: np.ndarray
    first_hit_generation: int | None
    final_best_value: float
    final_best_genome: np.ndarray
    seed: int


def first_hit(trace, epsilon: float) -> int | None:
    """Smallest 1-based index of ``trace`` strictly below ``epsilon``, or None."""
    hits = np.flatnonzero(np.asarray(trace, dtype=float) < epsilon)
    return int(hits[0]) + 1 if hits.size else None


def run_ga(config: GaConfig, problem: Problem, seed: int) -> RunRecord:
    """Execute one GA run of ``config.generations`` generations.

    The run is fully determined by (config, problem, seed): a fresh random
    stream is built from the seed and drives initialization, selection,
    recombination, mutation, and elite placement. Every population member
    is (re)evaluated each generation, so a run costs exactly
    ``population_size * generations`` objective evaluations. The run never
    stops early on success; the budget is always spent.
    """
    config.validate(problem.dim)
    rng = make_stream(seed)
    recombine = make_recombiner(config.recombination, config.recombination_params, problem.dim)
    mutate = make_mutator(config.mutation, config.mutation_params, problem.bounds, problem.dim)
    epsilon = config.resolved_epsilon(problem.dim)

    pop = init_population(problem.dim, config.population_size, problem.bounds, rng)
    trace = np.empty(config.generations, dtype=float)
    hit: int | None = None
    elite = None
    elite_value = np.inf

    for gen in range(1, config.generations + 1):
        pop.fitness = np.asarray(problem.evaluate(pop.members), dtype=float)
        _, elite, elite_value = best_of(pop)
        trace[gen - 1] = elite_value
        if hit is None and elite_value < epsilon:
            hit = gen

        pool = tournament_select(pop, config.pool_size, TOURNAMENT_SIZE, rng)
        c1, c2 = recombine(pool[0::2], pool[1::2], rng)
        offspring = np.empty_like(pool)
        offspring[0::2] = c1
        offspring[1::2] = c2
        offspring = mutate(offspring, rng)
        offspring = clamp_to_bounds(offspring, problem.bounds)
        pop = elitist_replacement(offspring, elite, rng)

    return RunRecord(
        best_per_generation=trace,
        first_hit_generation=hit,
        final_best_value=float(elite_value),
        final_best_genome=elite,
        seed=seed,
    )
