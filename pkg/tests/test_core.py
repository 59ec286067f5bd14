import numpy as np
import pytest
import scipy.stats
from hypothesis import given, strategies as st

from kbsga.core import Bounds, ConfigError, Population, best_of, clamp_to_bounds, init_population
from kbsga.rng import child_stream, derive_seed, make_stream


class TestBounds:
    def test_inverted_bounds_rejected(self):
        with pytest.raises(ConfigError):
            Bounds(10.0, -10.0)
        with pytest.raises(ConfigError):
            Bounds(3.0, 3.0)

    def test_midpoint_and_width(self):
        b = Bounds(-10.0, 10.0)
        assert b.midpoint == 0.0
        assert b.width == 20.0


class TestInitPopulation:
    def test_shape_and_containment(self):
        pop = init_population(2, 400, Bounds(-10.0, 10.0), make_stream(1))
        assert pop.members.shape == (400, 2)
        assert pop.fitness is None
        assert np.all(pop.members >= -10.0) and np.all(pop.members <= 10.0)

    def test_degenerate_interval_containment(self):
        c, eps = 3.0, 1e-9
        pop = init_population(4, 50, Bounds(c, c + eps), make_stream(2))
        assert np.all(pop.members >= c) and np.all(pop.members <= c + eps)

    def test_fixed_seed_reproduces_exactly(self):
        a = init_population(5, 3, Bounds(-1.0, 1.0), make_stream(42))
        b = init_population(5, 3, Bounds(-1.0, 1.0), make_stream(42))
        assert a.members.tobytes() == b.members.tobytes()

    @pytest.mark.parametrize("dim,size", [(0, 10), (-1, 10), (3, 1), (3, 0)])
    def test_bad_sizes_rejected(self, dim, size):
        with pytest.raises(ConfigError):
            init_population(dim, size, Bounds(0.0, 1.0), make_stream(0))

    def test_uniformity(self):
        # 1e5 genes: mean within 3 standard errors of the midpoint and a
        # KS statistic below the 1% critical value
        lo, hi = -10.0, 10.0
        pop = init_population(10, 10_000, Bounds(lo, hi), make_stream(7))
        genes = pop.members.ravel()
        se = (hi - lo) / np.sqrt(12.0) / np.sqrt(genes.size)
        assert abs(genes.mean() - 0.0) < 3 * se
        stat = scipy.stats.kstest(genes, "uniform", args=(lo, hi - lo)).statistic
        assert stat < 1.628 / np.sqrt(genes.size)  # asymptotic 1% critical value


class TestClamp:
    def test_single_side(self):
        out = clamp_to_bounds(np.array([-12.0, 3.0]), Bounds(-10.0, 10.0))
        assert out.tolist() == [-10.0, 3.0]

    def test_inside_unchanged(self):
        g = np.array([-1.0, 0.0, 9.9])
        assert clamp_to_bounds(g, Bounds(-10.0, 10.0)).tolist() == g.tolist()

    def test_both_sides(self):
        out = clamp_to_bounds(np.array([15.0, -15.0]), Bounds(-10.0, 10.0))
        assert out.tolist() == [10.0, -10.0]

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=16))
    def test_idempotent(self, genes):
        b = Bounds(-10.0, 10.0)
        once = clamp_to_bounds(np.array(genes), b)
        assert np.array_equal(clamp_to_bounds(once, b), once)


class TestBestOf:
    def test_argmin(self):
        pop = Population(np.zeros((3, 1)), np.array([3.0, 1.0, 2.0]))
        idx, _, value = best_of(pop)
        assert idx == 1 and value == 1.0

    def test_tie_breaks_to_lowest_index(self):
        pop = Population(np.array([[1.0], [2.0]]), np.array([1.0, 1.0]))
        assert best_of(pop)[0] == 0

    def test_singleton(self):
        pop = Population(np.array([[5.0]]), np.array([9.0]))
        idx, genome, value = best_of(pop)
        assert idx == 0 and genome.tolist() == [5.0] and value == 9.0

    def test_requires_fitness(self):
        with pytest.raises(ValueError):
            best_of(Population(np.zeros((2, 1)), None))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            best_of(Population(np.zeros((0, 1)), np.zeros(0)))

    def test_returns_copy(self):
        pop = Population(np.array([[1.0], [2.0]]), np.array([0.0, 1.0]))
        _, genome, _ = best_of(pop)
        genome[0] = 99.0
        assert pop.members[0, 0] == 1.0


class TestStreams:
    def test_equal_seeds_equal_deviates(self):
        a = make_stream(123).random(10_000)
        b = make_stream(123).random(10_000)
        assert np.array_equal(a, b)

    def test_child_seeds_distinct(self):
        seeds = {derive_seed(99, 0, r) for r in range(1000)}
        assert len(seeds) == 1000

    def test_child_streams_differ_from_each_other(self):
        a = child_stream(99, 0, 0).random(100)
        b = child_stream(99, 0, 1).random(100)
        assert not np.array_equal(a, b)

    def test_derivation_is_order_independent(self):
        assert derive_seed(5, 1, 2) == derive_seed(5, 1, 2)
        assert derive_seed(5, 1, 2) != derive_seed(5, 2, 1)

    def test_key_range_validated(self):
        with pytest.raises(ValueError):
            derive_seed(1, -1)
        with pytest.raises(ValueError):
            derive_seed(1, 2**32)
