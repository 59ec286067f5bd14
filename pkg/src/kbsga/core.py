"""Core domain types and population primitives.

Genomes are plain 1-D float arrays; populations stack them into a
``(size, dim)`` matrix. Everything downstream (operators, engine,
objectives) works on these arrays, accepting either a single genome of
shape ``(n,)`` or a batch of shape ``(B, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "ConfigError",
    "Bounds",
    "Population",
    "Problem",
    "init_population",
    "clamp_to_bounds",
    "best_of",
]


class ConfigError(ValueError):
    """Invalid configuration (bad parameter values, malformed config files)."""


@dataclass(frozen=True)
class Bounds:
    """Per-gene lower/upper limits, applied uniformly to all genes."""

    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ConfigError(f"bounds require lower < upper, got [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)


@dataclass
class Population:
    """A fixed-size set of genomes plus, once evaluated, their fitness values.

    ``fitness is None`` marks the values as invalid (not yet evaluated).
    """

    members: np.ndarray  # shape (size, dim)
    fitness: np.ndarray | None = None  # shape (size,) when valid

    def __post_init__(self):
        self.members = np.asarray(self.members, dtype=float)
        if self.members.ndim != 2:
            raise ValueError(f"members must be a (size, dim) array, got shape {self.members.shape}")
        if self.fitness is not None:
            self.fitness = np.asarray(self.fitness, dtype=float)
            if self.fitness.shape != (len(self.members),):
                raise ValueError("fitness length must match population size")

    @property
    def size(self) -> int:
        return self.members.shape[0]

    @property
    def dim(self) -> int:
        return self.members.shape[1]


@dataclass(frozen=True)
class Problem:
    """An objective bound to a dimension and a search box.

    ``evaluate`` must accept a single genome ``(dim,)`` or a batch
    ``(B, dim)`` and return a scalar or ``(B,)`` of objective values;
    lower values are better throughout the package.
    """

    name: str
    dim: int
    bounds: Bounds
    evaluate: Callable[[np.ndarray], np.ndarray] = field(repr=False)


def init_population(dim: int, size: int, bounds: Bounds, rng: np.random.Generator) -> Population:
    """Sample ``size`` genomes with every gene i.i.d. uniform in the bounds."""
    if dim < 1:
        raise ConfigError(f"dim must be >= 1, got {dim}")
    if size < 2:
        raise ConfigError(f"population size must be >= 2, got {size}")
    genes = bounds.lower + bounds.width * rng.random((size, dim))
    return Population(members=genes, fitness=None)


def clamp_to_bounds(g: np.ndarray, bounds: Bounds) -> np.ndarray:
    """Clip every gene into [lower, upper]; shape is preserved."""
    return np.clip(np.asarray(g, dtype=float), bounds.lower, bounds.upper)


def best_of(pop: Population) -> tuple[int, np.ndarray, float]:
    """Index, genome, and value of the minimum-objective member.

    Ties break toward the lowest index. Requires valid fitness.
    """
    if pop.size == 0:
        raise ValueError("best_of on empty population")
    if pop.fitness is None:
        raise ValueError("best_of requires evaluated fitness")
    idx = int(np.argmin(pop.fitness))
    return idx, pop.members[idx].copy(), float(pop.fitness[idx])
