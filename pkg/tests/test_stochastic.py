import math

import numpy as np
import pytest

from infoquanta.entropy import PureState
from infoquanta.errors import ConvergenceError, DomainError, ShapeError, ValidationError
from infoquanta.stochastic import (MarkovChain, RandomSource, entropy_trajectory,
                                   sample_word_sequence, simulate_wiener, simulate_wiener_paths,
                                   stationary_distribution)

SYM = MarkovChain((0, 1), [[0.5, 0.5], [0.5, 0.5]])


def random_chain(rng, n=4):
    P = rng.random((n, n))
    P /= P.sum(axis=1, keepdims=True)
    # rows now sum to 1 up to an ulp; absorb the remainder in the last column
    P[:, -1] = 1.0 - P[:, :-1].sum(axis=1)
    return MarkovChain(tuple(range(n)), P)


class TestRandomSource:
    def test_determinism(self):
        a = RandomSource(42).normal(100)
        b = RandomSource(42).normal(100)
        assert np.array_equal(a, b)

    def test_spawn_independent_and_repeatable(self):
        root = RandomSource(7)
        c0, c1 = root.spawn(0).normal(50), root.spawn(1).normal(50)
        assert not np.array_equal(c0, c1)
        assert np.array_equal(c0, RandomSource(7).spawn(0).normal(50))

    @pytest.mark.parametrize("seed", [-1, 2**64, 1.5, True])
    def test_seed_range(self, seed):
        with pytest.raises(ValidationError):
            RandomSource(seed)


class TestWiener:
    def test_starts_at_zero(self):
        for s in range(5):
            assert simulate_wiener(np.linspace(0, 1, 11), RandomSource(s)).values[0] == 0.0

    def test_grid_validation(self):
        with pytest.raises(ValidationError):
            simulate_wiener([0.1, 0.2], RandomSource(0))
        with pytest.raises(ValidationError):
            simulate_wiener([0.0, 0.2, 0.2], RandomSource(0))

    def test_reproducible(self):
        t = np.linspace(0, 2, 33)
        assert np.array_equal(simulate_wiener(t, RandomSource(3)).values,
                              simulate_wiener(t, RandomSource(3)).values)

    def test_variance_linear_in_t(self):
        t = np.array([0.0, 0.25, 0.5, 1.0, 2.0])
        W = simulate_wiener_paths(t, 100_000, RandomSource(11))
        var = W[:, 1:].var(axis=0, ddof=1)
        slope = np.polyfit(t[1:], var, 1)[0]
        assert abs(slope - 1.0) <= 0.05


class TestMarkovChain:
    def test_validation(self):
        with pytest.raises(ValidationError):
            MarkovChain((0, 1), [[0.5, 0.6], [0.5, 0.5]])
        with pytest.raises(ShapeError):
            MarkovChain((0, 1, 2), [[0.5, 0.5], [0.5, 0.5]])
        with pytest.raises(ValidationError):
            MarkovChain((0, 0), [[0.5, 0.5], [0.5, 0.5]])

    def test_symmetric(self):
        pi = stationary_distribution(SYM)
        np.testing.assert_allclose(pi.probabilities, [0.5, 0.5], atol=1e-12)

    def test_hand_solution(self):
        # pi_0 = 0.5 / (0.1 + 0.5)
        pi = stationary_distribution(MarkovChain((3, 8), [[0.9, 0.1], [0.5, 0.5]]))
        assert pi[3] == pytest.approx(5 / 6, abs=1e-11)
        assert pi[8] == pytest.approx(1 / 6, abs=1e-11)

    def test_fixed_point(self, rng):
        for _ in range(20):
            chain = random_chain(rng, int(rng.integers(2, 7)))
            pi = stationary_distribution(chain).probabilities
            assert np.max(np.abs(pi @ chain.transition - pi)) <= 1e-10

    def test_periodic_chain_fails(self):
        chain = MarkovChain((0, 1), [[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ConvergenceError):
            stationary_distribution(chain, max_iter=1000)


class TestWordSequence:
    def test_absorbing(self):
        chain = MarkovChain((1, 3, 5), np.eye(3))
        seq = sample_word_sequence(chain, 50, RandomSource(0), start=3)
        assert np.all(seq == 3)

    def test_frequency(self):
        seq = sample_word_sequence(SYM, 100_000, RandomSource(5))
        assert 0.49 <= np.mean(seq == 0) <= 0.51

    def test_converges_to_stationary(self):
        chain = MarkovChain((0, 1), [[0.9, 0.1], [0.5, 0.5]])
        seq = sample_word_sequence(chain, 200_000, RandomSource(9))
        assert np.mean(seq == 0) == pytest.approx(5 / 6, abs=0.01)

    def test_deterministic(self):
        a = sample_word_sequence(SYM, 1000, RandomSource(77))
        b = sample_word_sequence(SYM, 1000, RandomSource(77))
        assert np.array_equal(a, b)

    def test_bad_start(self):
        with pytest.raises(ValidationError):
            sample_word_sequence(SYM, 10, RandomSource(0), start=9)
        with pytest.raises(DomainError):
            sample_word_sequence(SYM, 0, RandomSource(0))


class TestEntropyTrajectory:
    def test_single_state(self):
        chain = MarkovChain((4,), [[1.0]])
        tr = entropy_trajectory(chain, [[0.6, 0.8]], np.arange(20.0), RandomSource(0), 5)
        np.testing.assert_allclose(tr.entropies, 0.0, atol=1e-12)

    def test_orthogonal_large_window(self):
        tr = entropy_trajectory(SYM, [[1, 0], [0, 1]], np.arange(200.0), RandomSource(1), 5000)
        assert abs(tr.mean - math.log(2)) <= 0.01
        assert np.all(np.abs(tr.entropies - math.log(2)) <= 0.01)

    def test_identical_states(self):
        psi = np.array([1, 1j]) / math.sqrt(2)
        tr = entropy_trajectory(SYM, [psi, psi], np.arange(50.0), RandomSource(2), 10)
        np.testing.assert_allclose(tr.entropies, 0.0, atol=1e-10)

    def test_bounds_and_histogram(self):
        chain = MarkovChain((0, 1, 2), [[0.2, 0.5, 0.3], [0.3, 0.3, 0.4], [0.6, 0.2, 0.2]])
        states = [PureState.basis(3, 0), PureState.normalized([1, 1, 0]), PureState.basis(3, 2)]
        tr = entropy_trajectory(chain, states, np.linspace(0, 1, 300), RandomSource(3), 7, bins=10)
        assert np.all(tr.entropies >= 0) and np.all(tr.entropies <= math.log(3))
        assert tr.histogram.sum() == 300
        assert tr.bin_edges[-1] == pytest.approx(math.log(3))

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            entropy_trajectory(SYM, [[1, 0]], np.arange(3.0), RandomSource(0), 2)
        with pytest.raises(ShapeError):
            entropy_trajectory(SYM, [[1, 0], [0, 0, 1]], np.arange(3.0), RandomSource(0), 2)
