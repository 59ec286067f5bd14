"""Benchmark objective functions and the 4-means clustering problem.

The six black-box test functions are implemented in their standard
textbook forms (Rastrigin with the ``cos(2*pi*x_k)`` summand, Rosenbrock
as ``sum 100*(x_{k+1} - x_k^2)^2 + (x_k - 1)^2``). All of them broadcast
over a leading batch axis: input ``(n,)`` gives a scalar, ``(B, n)``
gives ``(B,)``.

The clustering objective scores a concatenated-centroid genome against a
fixed point cloud: each point joins its nearest centroid and the score is
the sum over clusters of the square root of the within-cluster sum of
squared coordinate deviations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .core import Bounds, ConfigError, Problem
from .rng import make_stream

__all__ = [
    "BenchmarkFunction",
    "FUNCTIONS",
    "paraboloid",
    "rastrigin",
    "rosenbrock",
    "schwefel",
    "ackley",
    "griewangk",
    "benchmark_problem",
    "Dataset",
    "generate_dataset",
    "save_dataset",
    "load_dataset",
    "ClusteringSolution",
    "kmeans_objective",
    "kmeans_problem",
    "lloyd",
    "lloyd_steps",
    "KMEANS_K",
]

KMEANS_K = 4  # cluster count of the canonical 4-means experiment


def paraboloid(x) -> np.ndarray:
    """Sum of squares; the only unimodal function in the suite."""
    x = np.asarray(x, dtype=float)
    return np.sum(x * x, axis=-1)


def rastrigin(x) -> np.ndarray:
    """``|x|^2 + 10n - 10 sum cos(2 pi x_k)``; ~10^n local optima."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    return np.sum(x * x, axis=-1) + 10.0 * n - 10.0 * np.sum(np.cos(2.0 * np.pi * x), axis=-1)


def rosenbrock(x) -> np.ndarray:
    """``sum 100 (x_{k+1} - x_k^2)^2 + (x_k - 1)^2``; minimum 0 at the all-ones vector."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] < 2:
        raise ValueError("rosenbrock requires dimension >= 2")
    head = x[..., :-1]
    tail = x[..., 1:]
    return np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2, axis=-1)


def schwefel(x) -> np.ndarray:
    """``418.982 n - sum x_k sin(sqrt|x_k|)``.

    The truncated 418.982 constant leaves a small nonzero residual at the
    420.9687... optimum.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    return 418.982 * n - np.sum(x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def ackley(x) -> np.ndarray:
    """``20 + e - 20 exp(-0.2 sqrt(|x|^2/n)) - exp(mean cos(2 pi x_k))``."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    rms = np.sqrt(np.sum(x * x, axis=-1) / n)
    mean_cos = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / n
    return 20.0 + np.e - 20.0 * np.exp(-0.2 * rms) - np.exp(mean_cos)


def griewangk(x) -> np.ndarray:
    """``1 + |x|^2/4000 - prod cos(x_k / sqrt(k))`` with 1-based k."""
    x = np.asarray(x, dtype=float)
    k = np.arange(1, x.shape[-1] + 1, dtype=float)
    return 1.0 + np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / np.sqrt(k)), axis=-1)


@dataclass(frozen=True)
class BenchmarkFunction:
    """A test function with its search box and known optimum."""

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    bounds: Bounds = Bounds(-1.0, 1.0)
    optimum_gene: float = 0.0  # every coordinate of the optimum equals this
    optimum_value: float = 0.0

    def optimum_location(self, dim: int) -> np.ndarray:
        return np.full(dim, self.optimum_gene)


FUNCTIONS: dict[str, BenchmarkFunction] = {
    f.name: f
    for f in (
        BenchmarkFunction("paraboloid", paraboloid, Bounds(-10.0, 10.0)),
        BenchmarkFunction("rastrigin", rastrigin, Bounds(-5.12, 5.12)),
        BenchmarkFunction("rosenbrock", rosenbrock, Bounds(-5.12, 5.12), optimum_gene=1.0),
        BenchmarkFunction("schwefel", schwefel, Bounds(-500.0, 500.0), optimum_gene=420.9687),
        BenchmarkFunction("ackley", ackley, Bounds(-32.0, 32.0)),
        BenchmarkFunction("griewangk", griewangk, Bounds(-600.0, 600.0)),
    )
}


def benchmark_problem(name: str, dim: int) -> Problem:
    """Bind one of the named test functions to a dimension."""
    try:
        fn = FUNCTIONS[name]
    except KeyError:
        raise ConfigError(f"unknown function {name!r}; choose from {sorted(FUNCTIONS)}") from None
    if dim < 1 or (name == "rosenbrock" and dim < 2):
        raise ConfigError(f"invalid dimension {dim} for {name}")
    return Problem(name=name, dim=dim, bounds=fn.bounds, evaluate=fn.evaluate)


# ---------------------------------------------------------------------------
# clustering


@dataclass(frozen=True)
class Dataset:
    """A fixed point cloud shared by every algorithm in one experiment."""

    points: np.ndarray  # shape (m, d)
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        if self.points.ndim != 2:
            raise ValueError("points must be a (m, d) array")

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def generate_dataset(m: int, d: int, seed: int, low: float = 0.0, high: float = 10.0) -> Dataset:
    """Sample ``m`` points i.i.d. uniform per coordinate in [low, high].

    The seed is recorded so the same cloud can be regenerated or reloaded
    bit-exactly anywhere.
    """
    if m <= KMEANS_K:
        raise ConfigError(f"need more points than the {KMEANS_K} clusters, got m={m}")
    if d < 1:
        raise ConfigError(f"point dimension must be >= 1, got {d}")
    if not low < high:
        raise ConfigError(f"invalid generation interval [{low}, {high}]")
    rng = make_stream(seed)
    pts = low + (high - low) * rng.random((m, d))
    return Dataset(points=pts, seed=seed)


def save_dataset(dataset: Dataset, path) -> None:
    """Write a dataset as flat text: header ``m d seed`` then one point per line."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{dataset.m} {dataset.d} {dataset.seed}\n")
        for row in dataset.points:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def load_dataset(path) -> Dataset:
    """Read a dataset written by :func:`save_dataset` (bit-exact round trip)."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError(f"malformed dataset header in {path}")
        m, d, seed = int(header[0]), int(header[1]), int(header[2])
        pts = np.loadtxt(fh, dtype=float, ndmin=2)
    if pts.shape != (m, d):
        raise ValueError(f"dataset body {pts.shape} does not match header ({m}, {d})")
    return Dataset(points=pts, seed=seed)


@dataclass(frozen=True)
class ClusteringSolution:
    """``k`` centroids of dimension ``d``; encodes to a genome by concatenation."""

    centroids: np.ndarray  # shape (k, d)

    def __post_init__(self):
        object.__setattr__(self, "centroids", np.asarray(self.centroids, dtype=float))
        if self.centroids.ndim != 2:
            raise ValueError("centroids must be a (k, d) array")

    @property
    def k(self) -> int:
        return self.centroids.shape[0]

    def as_genome(self) -> np.ndarray:
        return self.centroids.ravel().copy()


def _cluster_costs(genomes: np.ndarray, points: np.ndarray, k: int) -> np.ndarray:
    """Batched objective: (B, k*d) genomes -> (B,) scores."""
    b, _ = genomes.shape
    m, d = points.shape
    cents = np.ascontiguousarray(genomes.reshape(b, k, d).transpose(1, 2, 0))  # (k, d, B)
    pcols = np.ascontiguousarray(points.T)  # (d, m)
    # nearest-centroid pass, one centroid at a time; accumulating the
    # squared distance coordinate by coordinate keeps temporaries at
    # (B, m) and exact zeros exact
    best = np.empty((b, m))
    assign = np.zeros((b, m), dtype=np.int64)
    diff = np.empty((b, m))
    sq = np.empty((b, m))
    for j in range(k):
        np.subtract(cents[j, 0][:, None], pcols[0][None, :], out=sq)
        np.multiply(sq, sq, out=sq)
        for t in range(1, d):
            np.subtract(cents[j, t][:, None], pcols[t][None, :], out=diff)
            sq += diff * diff
        if j == 0:
            best[:] = sq
        else:
            closer = sq < best  # strict: ties keep the lowest centroid index
            assign[closer] = j
            np.copyto(best, sq, where=closer)
    within = np.zeros((b, k))  # per-cluster SSE; empty clusters stay 0
    for j in range(k):
        within[:, j] = np.sum(best * (assign == j), axis=-1)
    return np.sum(np.sqrt(within), axis=-1)


def kmeans_objective(genome, data: Dataset, k: int = KMEANS_K):
    """Sum over clusters of sqrt(within-cluster sum of squared deviations).

    The genome concatenates ``k`` centroids of dimension ``data.d``; each
    point is assigned to its nearest centroid (Euclidean, ties to the lowest
    centroid index) and empty clusters contribute 0.
    """
    genome = np.asarray(genome, dtype=float)
    if genome.shape[-1] != k * data.d:
        raise ValueError(f"genome length {genome.shape[-1]} != k*d = {k * data.d}")
    if genome.ndim == 1:
        return float(_cluster_costs(genome[None, :], data.points, k)[0])
    return _cluster_costs(genome, data.points, k)


def kmeans_problem(data: Dataset, k: int = KMEANS_K, bounds: Bounds | None = None) -> Problem:
    """Wrap the clustering objective as a ``Problem`` over a k*d genome."""
    if data.m <= k:
        raise ConfigError(f"need more points than clusters, got m={data.m}, k={k}")
    if bounds is None:
        bounds = Bounds(float(data.points.min()), float(data.points.max()))
    return Problem(
        name=f"kmeans{k}",
        dim=k * data.d,
        bounds=bounds,
        evaluate=lambda g: kmeans_objective(g, data, k),
    )


def lloyd_steps(
    data: Dataset, k: int, rng: np.random.Generator, max_iter: int = 100
) -> Iterator[tuple[np.ndarray, np.ndarray, float]]:
    """Iterate the classic assign/update loop, yielding per-iteration state.

    Yields ``(centroids, assignment, sse)`` after each update, where ``sse``
    is the within-cluster sum of squared distances under the yielded
    assignment (the quantity the iteration monotonically decreases; empty
    clusters contribute 0 and are re-seeded from a random point). Stops when
    the assignment repeats or after ``max_iter`` iterations.
    """
    if data.m <= k:
        raise ConfigError(f"need more points than clusters, got m={data.m}, k={k}")
    pts = data.points
    cents = pts[rng.choice(data.m, size=k, replace=False)].copy()
    prev = None
    for _ in range(max_iter):
        diff = pts[:, None, :] - cents[None, :, :]
        sq = np.sum(diff * diff, axis=-1)  # (m, k)
        assign = np.argmin(sq, axis=-1)
        for j in range(k):
            mask = assign == j
            if mask.any():
                cents[j] = pts[mask].mean(axis=0)
            else:
                cents[j] = pts[rng.integers(data.m)]
        # SSE under the current assignment and updated centroids; empty
        # clusters contribute nothing, so re-seeding keeps this monotone.
        sse = 0.0
        for j in range(k):
            mask = assign == j
            if mask.any():
                sse += float(np.sum((pts[mask] - cents[j]) ** 2))
        yield cents.copy(), assign.copy(), sse
        if prev is not None and np.array_equal(assign, prev):
            return
        prev = assign


def lloyd(
    data: Dataset, k: int, rng: np.random.Generator, max_iter: int = 100
) -> tuple[ClusteringSolution, float]:
    """Run the assign/update iteration to convergence from one random start.

    Centroids start as ``k`` distinct data points. Returns the solution and
    its clustering-objective value (the same score the GA optimizes).
    """
    cents = None
    last_sse = np.inf
    for cents, _, sse in lloyd_steps(data, k, rng, max_iter):
        if sse > last_sse * (1 + 1e-12) + 1e-12:
            raise AssertionError(f"within-cluster SSE increased: {last_sse} -> {sse}")
        last_sse = sse
    solution = ClusteringSolution(centroids=cents)
    return solution, kmeans_objective(solution.as_genome(), data, k)
