import numpy as np
import pytest
from hypothesis import given, strategies as st

from kbsga.engine import RunRecord
from kbsga.stats import mann_whitney_u, summarize, summarize_hits


def mwu_counting_oracle(a, b):
    """U by brute force: pairwise wins plus half-ties, min of both directions."""
    u1 = sum(1.0 if x < y else 0.5 if x == y else 0.0 for x in a for y in b)
    u2 = len(a) * len(b) - u1
    return min(u1, u2), u1, u2


def record(trace, final=None, seed=0):
    trace = np.asarray(trace, dtype=float)
    return RunRecord(
        best_per_generation=trace,
        first_hit_generation=None,
        final_best_value=trace[-1] if final is None else final,
        final_best_genome=np.zeros(1),
        seed=seed,
    )


class TestSummarize:
    def test_success_fraction(self):
        hits = [1] * 13 + [None] * 7
        s = summarize_hits(hits, [0.0] * 20)
        assert s.success_rate == 0.65
        assert s.run_count == 20

    def test_all_successful_runtimes_coincide(self):
        s = summarize_hits([100, 200], [0.0, 0.0])
        assert s.mean_runtime_all == 150.0
        assert s.mean_runtime_successful == 150.0

    def test_partial_success_denominators(self):
        # one success at t=100 of R=2: sum-over-R gives 50, successful-only 100
        s = summarize_hits([100, None], [0.0, 1.0])
        assert s.mean_runtime_all == 50.0
        assert s.mean_runtime_successful == 100.0
        assert s.mean_final_value == 0.5

    def test_no_successes(self):
        s = summarize_hits([None, None], [1.0, 3.0])
        assert s.success_rate == 0.0
        assert s.mean_runtime_all == 0.0
        assert s.mean_runtime_successful is None
        assert s.mean_final_value == 2.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            summarize_hits([], [])
        with pytest.raises(ValueError):
            summarize([], epsilon=0.1)

    def test_std_final(self):
        s = summarize_hits([None, None], [1.0, 3.0])
        assert s.std_final_value == pytest.approx(np.std([1.0, 3.0], ddof=1))
        assert summarize_hits([None], [1.0]).std_final_value == 0.0

    def test_recomputes_hits_from_traces(self):
        records = [record([1.0, 0.5, 0.05]), record([1.0, 0.9, 0.8])]
        s = summarize(records, epsilon=0.1)
        assert s.success_rate == 0.5
        assert s.mean_runtime_successful == 3.0
        assert s.mean_runtime_all == 1.5

    @given(
        hits=st.lists(st.one_of(st.none(), st.integers(1, 5000)), min_size=1, max_size=40),
    )
    def test_runtime_identity(self, hits):
        s = summarize_hits(hits, [0.0] * len(hits))
        if s.success_rate > 0:
            assert s.mean_runtime_all == pytest.approx(
                s.success_rate * s.mean_runtime_successful, rel=1e-12
            )
        else:
            assert s.mean_runtime_all == 0.0


class TestMannWhitney:
    def test_disjoint_samples(self):
        r = mann_whitney_u([1, 2, 3], [4, 5, 6])
        assert (r.u1, r.u2, r.u) == (9.0, 0.0, 0.0)
        assert r.z < 0  # first sample smaller
        assert r.p == pytest.approx(0.02476730671781337, rel=1e-9)

    def test_identical_samples(self):
        r = mann_whitney_u([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert r.u1 == r.u2 == 4.5
        assert r.z == 0.0 and r.p == 0.5
        assert not r.degenerate

    def test_midrank_ties_worked_example(self):
        # joint midranks: the three 1s share rank 2, the 2 takes 4, the 3s 5.5
        r = mann_whitney_u([1, 1, 2], [1, 3, 3])
        assert (r.u1, r.u2, r.u) == (7.0, 2.0, 2.0)

    def test_degenerate_all_tied(self):
        r = mann_whitney_u([2.0, 2.0], [2.0, 2.0, 2.0])
        assert r.degenerate
        assert r.z == 0.0 and r.p == 0.5
        assert r.u1 + r.u2 == 6.0

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            mann_whitney_u([], [1.0])
        with pytest.raises(ValueError):
            mann_whitney_u([1.0], [])

    def test_sign_convention(self):
        smaller_first = mann_whitney_u(list(range(1, 21)), list(range(21, 41)))
        assert smaller_first.z < 0 and smaller_first.p < 0.05
        larger_first = mann_whitney_u(list(range(21, 41)), list(range(1, 21)))
        assert larger_first.z > 0

    @given(
        a=st.lists(st.integers(1, 4), min_size=1, max_size=8),
        b=st.lists(st.integers(1, 4), min_size=1, max_size=8),
    )
    def test_u_matches_counting_oracle(self, a, b):
        r = mann_whitney_u(a, b)
        u_expected, u1_expected, u2_expected = mwu_counting_oracle(a, b)
        assert r.u == pytest.approx(u_expected, abs=1e-9)
        assert r.u1 == pytest.approx(u1_expected, abs=1e-9)
        assert r.u2 == pytest.approx(u2_expected, abs=1e-9)

    @given(
        a=st.lists(st.floats(-50, 50, allow_nan=False), min_size=1, max_size=12),
        b=st.lists(st.floats(-50, 50, allow_nan=False), min_size=1, max_size=12),
    )
    def test_u_sum_and_antisymmetry(self, a, b):
        fwd = mann_whitney_u(a, b)
        rev = mann_whitney_u(b, a)
        assert fwd.u1 + fwd.u2 == pytest.approx(len(a) * len(b), abs=1e-9)
        assert fwd.z == pytest.approx(-rev.z, abs=1e-12)
        assert fwd.u == pytest.approx(rev.u, abs=1e-9)

    @given(
        a=st.lists(st.floats(-50, 50, allow_nan=False), min_size=5, max_size=15, unique=True),
        shift=st.floats(0.5, 100.0),
    )
    def test_shift_monotonicity(self, a, shift):
        r = mann_whitney_u(a, [x + shift for x in a])
        assert r.z < 0
