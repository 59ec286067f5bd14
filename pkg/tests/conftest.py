import numpy as np
import pytest
from hypothesis import settings

# numpy-heavy property tests are slow on small CI boxes; wall-clock
# deadlines only add flakiness there
settings.register_profile("default", deadline=None)
settings.load_profile("default")


class ScriptedRng:
    """Stand-in for numpy's Generator that replays prescribed draws.

    Each value in ``script`` answers one call (in order) to ``random``,
    ``integers``, or ``standard_normal``; scalars broadcast to the
    requested shape. Used to pin operator examples that depend on a
    specific deviate (e.g. an SBX u draw) without touching real streams.
    """

    def __init__(self, script):
        self._script = list(script)

    def _next(self, shape):
        value = self._script.pop(0)
        if shape is None:
            return value
        return np.broadcast_to(np.asarray(value, dtype=float), shape).copy()

    def random(self, shape=None):
        return self._next(shape)

    def integers(self, low, high=None, size=None):
        value = self._script.pop(0)
        if size is None:
            return value
        return np.broadcast_to(np.asarray(value), size).copy()

    def standard_normal(self, shape=None):
        return self._next(shape)


@pytest.fixture
def scripted_rng():
    return ScriptedRng
