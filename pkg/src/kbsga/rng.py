"""Deterministic random-stream construction for reproducible experiments.

All stochastic code in this package draws from ``numpy.random.Generator``
instances built here. Streams are seeded through ``numpy.random.SeedSequence``,
which is stable across platforms, so a given seed always yields the same
deviate sequence regardless of machine or worker scheduling.
"""

from __future__ import annotations

import numpy as np

__all__ = ["make_stream", "derive_seed", "child_stream"]


def make_stream(seed: int) -> np.random.Generator:
    """Create a PCG64 generator from a single integer seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def derive_seed(master_seed: int, *key: int) -> int:
    """Mix a master seed and an index key into a 64-bit child seed.

    The mixing is ``SeedSequence(entropy=master_seed, spawn_key=key)``;
    distinct keys give pairwise-independent child streams by construction,
    independent of the order in which they are created or consumed.
    Key components must lie in [0, 2**32).
    """
    if any(k < 0 or k >= 2**32 for k in key):
        raise ValueError(f"seed key components must be in [0, 2**32): {key}")
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def child_stream(master_seed: int, *key: int) -> np.random.Generator:
    """Stream for one replication: ``make_stream(derive_seed(master, *key))``."""
    return make_stream(derive_seed(master_seed, *key))
