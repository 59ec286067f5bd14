"""Replication summaries and the Mann-Whitney U rank test.

A replicated experiment is summarized by four statistics: the success
proportion, two mean-runtime variants (the sum of successful first-hit
generations divided by the total run count, and the same sum divided by
the number of successful runs), and the mean final objective value.

The rank test is the one-sided nonparametric Wilcoxon rank-sum /
Mann-Whitney U with midrank tie handling and the tie-corrected normal
approximation (no continuity correction). The z statistic is signed so
that a negative value indicates the first sample's values are smaller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .engine import RunRecord, first_hit

__all__ = ["ExperimentSummary", "RankTestResult", "summarize", "summarize_hits", "mann_whitney_u"]


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregate statistics over the runs of one experiment cell.

    ``mean_runtime_all`` divides the summed first-hit generations of
    successful runs by the total run count; ``mean_runtime_successful``
    divides by the number of successes and is None when nothing succeeded.
    ``std_final_value`` is the sample standard deviation (0 for one run).
    """

    success_rate: float
    mean_runtime_all: float
    mean_runtime_successful: float | None
    mean_final_value: float
    std_final_value: float
    run_count: int


def summarize_hits(
    first_hits: Sequence[int | None], final_values: Sequence[float]
) -> ExperimentSummary:
    """Summarize runs given their first-hit generations and final values."""
    if len(first_hits) == 0 or len(first_hits) != len(final_values):
        raise ValueError("need equal, non-empty first_hits and final_values")
    runs = len(first_hits)
    hits = [t for t in first_hits if t is not None]
    finals = np.asarray(final_values, dtype=float)
    return ExperimentSummary(
        success_rate=len(hits) / runs,
        mean_runtime_all=sum(hits) / runs,
        mean_runtime_successful=sum(hits) / len(hits) if hits else None,
        mean_final_value=float(np.mean(finals)),
        std_final_value=float(np.std(finals, ddof=1)) if runs > 1 else 0.0,
        run_count=runs,
    )


def summarize(records: Sequence[RunRecord], epsilon: float) -> ExperimentSummary:
    """Summarize run records, recomputing first hits at ``epsilon``."""
    if len(records) == 0:
        raise ValueError("summarize requires at least one run record")
    hits = [first_hit(r.best_per_generation, epsilon) for r in records]
    return summarize_hits(hits, [r.final_best_value for r in records])


@dataclass(frozen=True)
class RankTestResult:
    """Mann-Whitney U outcome: U = min(U1, U2), signed z, one-sided p.

    ``degenerate`` flags a zero-variance comparison (all values tied
    across both samples), reported as z=0, p=0.5.
    """

    u: float
    u1: float
    u2: float
    z: float
    p: float
    degenerate: bool = False


def _midranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..N with tied values sharing the mean of their rank range."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> RankTestResult:
    """Rank-sum test of two samples via the normal approximation.

    Joint midranks give rank sums R1, R2; then
    ``U1 = s1*s2 + s1(s1+1)/2 - R1`` (and symmetrically U2), with
    ``U = min(U1, U2)``. The z statistic uses mean ``s1*s2/2`` and the
    tie-corrected standard deviation; its sign is negative when the first
    sample's values are smaller. The p-value is the one-sided normal tail
    in the observed direction.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    s1, s2 = a.size, b.size
    n = s1 + s2
    ranks = _midranks(np.concatenate([a, b]))
    r1 = float(np.sum(ranks[:s1]))
    u1 = s1 * s2 + s1 * (s1 + 1) / 2.0 - r1
    u2 = s1 * s2 - u1
    u = min(u1, u2)

    _, counts = np.unique(np.concatenate([a, b]), return_counts=True)
    tie_term = float(np.sum(counts.astype(float) ** 3 - counts))
    mean_u = s1 * s2 / 2.0
    var_u = s1 * s2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if var_u <= 0.0:
        return RankTestResult(u=u, u1=u1, u2=u2, z=0.0, p=0.5, degenerate=True)

    z = (u2 - mean_u) / math.sqrt(var_u)
    p = 0.5 * math.erfc(abs(z) / math.sqrt(2.0))
    return RankTestResult(u=u, u1=u1, u2=u2, z=z, p=p)
