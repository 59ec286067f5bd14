"""Recombination, mutation, and selection operators.

Pair operators accept a single parent pair (two ``(n,)`` arrays) or a
batch of pairs (two ``(B, n)`` arrays, row i of each forming a pair) and
never modify their inputs. Within a batch, pairs are independent; the
k-bit-swap operators apply their swaps sequentially within each pair.

Blend-style operators (AX, alpha-KBS, beta-KBS) produce values strictly
between the two source values; BLX-alpha samples from the parents'
interval extended by a fraction ``alpha`` on each side; SBX spreads
around the parents' per-locus mean with polynomial index ``eta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Bounds, ConfigError, Population, clamp_to_bounds

__all__ = [
    "RecombinationParams",
    "MutationParams",
    "ax_crossover",
    "blx_alpha",
    "sbx",
    "alpha_kbs",
    "beta_kbs",
    "sample_partner_index",
    "gaussian_mutation",
    "simple_mutation",
    "gaussian_gene_values",
    "uniform_gene_values",
    "tournament_select",
    "elitist_replacement",
    "make_recombiner",
    "make_mutator",
    "RECOMBINATION_OPERATORS",
    "MUTATION_OPERATORS",
]


@dataclass
class RecombinationParams:
    """Shared knob bundle for the recombination operators.

    ``alpha`` is both the blend weight of the KBS operators and AX's
    lambda; ``blx_alpha`` the BLX interval extension; ``eta`` the SBX
    distribution index; ``k_swaps`` the number of swaps per pair (None
    resolves to ``max(1, n // 2)``); ``sigma_sq`` the variance of the
    beta-KBS partner-position distribution.
    """

    alpha: float = 0.4
    blx_alpha: float = 0.5
    eta: float = 2.0
    k_swaps: int | None = None
    sigma_sq: float = 4.0
    sbx_single_beta: bool = False

    def resolved_k(self, dim: int) -> int:
        return self.k_swaps if self.k_swaps is not None else max(1, dim // 2)

    def validate(self, dim: int) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.blx_alpha < 0.0:
            raise ConfigError(f"blx_alpha must be >= 0, got {self.blx_alpha}")
        if self.eta <= 0.0:
            raise ConfigError(f"eta must be > 0, got {self.eta}")
        if self.sigma_sq <= 0.0:
            raise ConfigError(f"sigma_sq must be > 0, got {self.sigma_sq}")
        k = self.resolved_k(dim)
        if k < 1 or k > dim:
            raise ConfigError(f"k_swaps must be in [1, {dim}], got {k}")


@dataclass
class MutationParams:
    """Per-gene mutation probability; None resolves to 1/n."""

    per_gene_rate: float | None = None

    def rate_for(self, dim: int) -> float:
        rate = 1.0 / dim if self.per_gene_rate is None else self.per_gene_rate
        if not 0.0 <= rate <= 1.0:
            raise ConfigError(f"per-gene mutation rate must be in [0, 1], got {rate}")
        return rate


def _as_pair_batch(p1, p2) -> tuple[np.ndarray, np.ndarray, bool]:
    """Copy parents into (B, n) form; flag remembers a single-pair input."""
    a = np.array(p1, dtype=float, copy=True)
    b = np.array(p2, dtype=float, copy=True)
    if a.shape != b.shape:
        raise ValueError(f"parent shape mismatch: {a.shape} vs {b.shape}")
    if a.ndim == 1:
        return a[None, :], b[None, :], True
    if a.ndim == 2:
        return a, b, False
    raise ValueError(f"parents must be (n,) or (B, n) arrays, got shape {a.shape}")


def _unbatch(c1: np.ndarray, c2: np.ndarray, single: bool):
    return (c1[0], c2[0]) if single else (c1, c2)


def ax_crossover(p1, p2, lam: float):
    """Arithmetical crossover: per-locus convex blend with weight ``lam``.

    ``h1 = lam*c1 + (1-lam)*c2`` and symmetrically for ``h2``; lam=1
    returns the parents unchanged.
    """
    if not 0.0 < lam <= 1.0:
        raise ValueError(f"lambda must be in (0, 1], got {lam}")
    a, b, single = _as_pair_batch(p1, p2)
    c1 = lam * a + (1.0 - lam) * b
    c2 = lam * b + (1.0 - lam) * a
    return _unbatch(c1, c2, single)


def blx_alpha(p1, p2, alpha: float, rng: np.random.Generator):
    """Blend crossover: offspring genes uniform in the alpha-extended interval.

    At each locus with parent values spanning ``I = max - min``, both
    offspring sample independently from ``[min - I*alpha, max + I*alpha]``.
    """
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    a, b, single = _as_pair_batch(p1, p2)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    span = hi - lo
    low_edge = lo - alpha * span
    width = span * (1.0 + 2.0 * alpha)
    u = rng.random((2,) + a.shape)
    c1 = low_edge + width * u[0]
    c2 = low_edge + width * u[1]
    return _unbatch(c1, c2, single)


def _sbx_beta(u: np.ndarray, eta: float) -> np.ndarray:
    contract = np.power(2.0 * u, 1.0 / (eta + 1.0))
    expand = np.power(2.0 * (1.0 - u), -1.0 / (eta + 1.0))
    return np.where(u < 0.5, contract, expand)


def sbx(p1, p2, eta: float, rng: np.random.Generator, single_beta: bool = False):
    """Simulated binary crossover with distribution index ``eta``.

    Per locus, draw u ~ U(0,1); the spread factor is ``(2u)^(1/(eta+1))``
    for u < 0.5 and ``(2(1-u))^(-1/(eta+1))`` otherwise, and the offspring
    keep the parents' per-locus mean. ``single_beta`` draws one u per pair
    instead of one per locus.
    """
    if eta <= 0.0:
        raise ValueError(f"eta must be > 0, got {eta}")
    a, b, single = _as_pair_batch(p1, p2)
    shape = (a.shape[0], 1) if single_beta else a.shape
    beta = _sbx_beta(rng.random(shape), eta)
    c1 = 0.5 * (a * (1.0 - beta) + b * (1.0 + beta))
    c2 = 0.5 * (a * (1.0 + beta) + b * (1.0 - beta))
    return _unbatch(c1, c2, single)


def _kbs_blend(c1, c2, i1, i2, alpha):
    rows = np.arange(c1.shape[0])
    v1 = c1[rows, i1]
    v2 = c2[rows, i2]
    c1[rows, i1] = alpha * v1 + (1.0 - alpha) * v2
    c2[rows, i2] = (1.0 - alpha) * v1 + alpha * v2


def alpha_kbs(p1, p2, alpha: float, k_swaps: int, rng: np.random.Generator):
    """K-bit-swap with uniformly random positions in both parents.

    Performs ``k_swaps`` sequential swaps per pair: pick a position in each
    parent uniformly at random (with replacement across swaps), then
    replace the two values with their alpha-blends. Each swap preserves
    the sum of the two affected values; alpha=0 is an exact value exchange
    and alpha=1 leaves the parents unchanged.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if k_swaps < 1:
        raise ValueError(f"k_swaps must be >= 1, got {k_swaps}")
    c1, c2, single = _as_pair_batch(p1, p2)
    n = c1.shape[1]
    for _ in range(k_swaps):
        i1 = rng.integers(0, n, size=c1.shape[0])
        i2 = rng.integers(0, n, size=c1.shape[0])
        _kbs_blend(c1, c2, i1, i2, alpha)
    return _unbatch(c1, c2, single)


def sample_partner_index(mu, sigma_sq: float, n: int, rng: np.random.Generator):
    """Draw a gene index from N(mu, sigma_sq), rounded and clamped to [0, n-1]."""
    mu = np.asarray(mu, dtype=float)
    u = mu + np.sqrt(sigma_sq) * rng.standard_normal(mu.shape)
    return np.clip(np.rint(u), 0, n - 1).astype(np.int64)


def beta_kbs(p1, p2, alpha: float, sigma_sq: float, k_swaps: int, rng: np.random.Generator):
    """K-bit-swap with the second position sampled near the first.

    Like :func:`alpha_kbs`, but the position in the second parent comes
    from a normal distribution centered on the position chosen in the
    first parent (variance ``sigma_sq``), rounded to the nearest index and
    clamped into range. As the variance approaches 0 this degenerates to
    same-locus blending.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    if sigma_sq <= 0.0:
        raise ValueError(f"sigma_sq must be > 0, got {sigma_sq}")
    if k_swaps < 1:
        raise ValueError(f"k_swaps must be >= 1, got {k_swaps}")
    c1, c2, single = _as_pair_batch(p1, p2)
    n = c1.shape[1]
    for _ in range(k_swaps):
        i1 = rng.integers(0, n, size=c1.shape[0])
        i2 = sample_partner_index(i1, sigma_sq, n, rng)
        _kbs_blend(c1, c2, i1, i2, alpha)
    return _unbatch(c1, c2, single)


def gaussian_gene_values(bounds: Bounds, shape, rng: np.random.Generator) -> np.ndarray:
    """Raw gaussian-mutation values: midpoint + sqrt(width) * N(0, 1)."""
    return bounds.midpoint + np.sqrt(bounds.width) * rng.standard_normal(shape)


def uniform_gene_values(bounds: Bounds, shape, rng: np.random.Generator) -> np.ndarray:
    """Raw simple-mutation values: uniform over [lower, upper]."""
    return bounds.lower + bounds.width * rng.random(shape)


def gaussian_mutation(g, bounds: Bounds, params: MutationParams, rng: np.random.Generator):
    """Replace each gene, with probability ``per_gene_rate``, by a gaussian draw.

    The replacement is ``(u1+u2)/2 + sqrt(u2-u1) * Z`` regardless of the
    current gene value, clamped into bounds; unselected genes are untouched.
    """
    g = np.asarray(g, dtype=float)
    rate = params.rate_for(g.shape[-1])
    mask = rng.random(g.shape) < rate
    values = clamp_to_bounds(gaussian_gene_values(bounds, g.shape, rng), bounds)
    return np.where(mask, values, g)


def simple_mutation(g, bounds: Bounds, params: MutationParams, rng: np.random.Generator):
    """Resample each gene uniformly over the bounds with probability ``per_gene_rate``."""
    g = np.asarray(g, dtype=float)
    rate = params.rate_for(g.shape[-1])
    mask = rng.random(g.shape) < rate
    values = uniform_gene_values(bounds, g.shape, rng)
    return np.where(mask, values, g)


def tournament_select(
    pop: Population, pool_size: int, tournament_size: int, rng: np.random.Generator
) -> np.ndarray:
    """Fill a mating pool by independent tournaments.

    Each of the ``pool_size`` tournaments draws ``tournament_size`` members
    uniformly with replacement and copies the fittest (lowest objective)
    into the pool. ``pool_size`` must be even so the pool can be paired.
    """
    if pop.fitness is None:
        raise ValueError("tournament selection requires evaluated fitness")
    if pool_size < 2 or pool_size % 2 != 0:
        raise ConfigError(f"pool_size must be even and >= 2, got {pool_size}")
    if tournament_size < 1:
        raise ConfigError(f"tournament_size must be >= 1, got {tournament_size}")
    draws = rng.integers(0, pop.size, size=(pool_size, tournament_size))
    winner_col = np.argmin(pop.fitness[draws], axis=1)
    winners = draws[np.arange(pool_size), winner_col]
    return pop.members[winners].copy()


def elitist_replacement(offspring, elite, rng: np.random.Generator) -> Population:
    """Overwrite one uniformly chosen offspring with the elite genome."""
    members = np.array(offspring, dtype=float, copy=True)
    if members.ndim != 2 or members.shape[0] == 0:
        raise ValueError("offspring must be a non-empty (B, n) array")
    slot = int(rng.integers(0, members.shape[0]))
    members[slot] = np.asarray(elite, dtype=float)
    return Population(members=members, fitness=None)


def _identity(p1, p2, _rng):
    a, b, single = _as_pair_batch(p1, p2)
    return _unbatch(a, b, single)


RECOMBINATION_OPERATORS = ("ax", "blx", "sbx", "alpha_kbs", "beta_kbs", "identity")
MUTATION_OPERATORS = ("sm", "gm")


def make_recombiner(
    name: str, params: RecombinationParams, dim: int
) -> Callable[[np.ndarray, np.ndarray, np.random.Generator], tuple[np.ndarray, np.ndarray]]:
    """Bind a named recombination operator to its parameters.

    ``identity`` copies the parents through unchanged; it is a control
    operator for experiments that need recombination disabled.
    """
    params.validate(dim)
    k = params.resolved_k(dim)
    table: dict[str, Callable] = {
        "ax": lambda a, b, rng: ax_crossover(a, b, params.alpha),
        "blx": lambda a, b, rng: blx_alpha(a, b, params.blx_alpha, rng),
        "sbx": lambda a, b, rng: sbx(a, b, params.eta, rng, single_beta=params.sbx_single_beta),
        "alpha_kbs": lambda a, b, rng: alpha_kbs(a, b, params.alpha, k, rng),
        "beta_kbs": lambda a, b, rng: beta_kbs(a, b, params.alpha, params.sigma_sq, k, rng),
        "identity": _identity,
    }
    try:
        return table[name]
    except KeyError:
        raise ConfigError(
            f"unknown recombination operator {name!r}; choose from {RECOMBINATION_OPERATORS}"
        ) from None


def make_mutator(
    name: str, params: MutationParams, bounds: Bounds, dim: int
) -> Callable[[np.ndarray, np.random.Generator], np.ndarray]:
    """Bind a named mutation operator to its parameters and bounds."""
    params.rate_for(dim)  # fail fast on a bad rate
    if name == "gm":
        return lambda g, rng: gaussian_mutation(g, bounds, params, rng)
    if name == "sm":
        return lambda g, rng: simple_mutation(g, bounds, params, rng)
    raise ConfigError(f"unknown mutation operator {name!r}; choose from {MUTATION_OPERATORS}")
