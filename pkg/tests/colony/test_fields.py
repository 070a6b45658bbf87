# Third Party
import numpy as np
import pytest

# Local
from dcode.colony.fields import (
    HeuristicField,
    PheromoneField,
    candidate_lists,
    deposit,
    evaporate,
    normalize_log_weights,
    transition_probabilities,
)
from dcode.problems.core import TspInstance, make_tour
from dcode.problems.rng import SeededRng

SQUARE = [(0, 0), (10, 0), (10, 10), (0, 10)]


def random_fields(gen, n):
    tau = gen.uniform(0.1, 10.0, size=(n, n))
    tau = (tau + tau.T) / 2
    eta = gen.uniform(0.01, 1.0, size=(n, n))
    eta = (eta + eta.T) / 2
    np.fill_diagonal(eta, 0.0)
    return PheromoneField(tau), HeuristicField(eta)


class TestTransitionProbabilities:
    def test_property_suite(self):
        gen = SeededRng(2024).gen
        for _ in range(1000):
            n = int(gen.integers(3, 9))
            pher, heur = random_fields(gen, n)
            alpha, beta = gen.uniform(0, 5, size=2)
            i = int(gen.integers(0, n))
            others = np.delete(np.arange(n), i)
            allowed = gen.choice(others, size=int(gen.integers(1, n)), replace=False)

            p = transition_probabilities(i, allowed, pher, heur, alpha, beta)
            assert abs(p.sum() - 1.0) <= 1e-12
            assert np.all(p >= 0)

            scaled = transition_probabilities(
                i, allowed, PheromoneField(pher.tau * 7.5), HeuristicField(heur.eta * 0.3), alpha, beta
            )
            assert np.allclose(scaled, p, rtol=0, atol=1e-12)

    def test_raising_pheromone_shifts_mass_to_that_edge(self):
        gen = SeededRng(2025).gen
        for _ in range(1000):
            n = int(gen.integers(3, 9))
            pher, heur = random_fields(gen, n)
            # moderate exponents keep every probability well above rounding
            alpha, beta = gen.uniform(0.5, 2.0), gen.uniform(0.0, 2.0)
            i = int(gen.integers(0, n))
            others = np.delete(np.arange(n), i)
            allowed = gen.choice(others, size=int(gen.integers(2, n)), replace=False)
            p = transition_probabilities(i, allowed, pher, heur, alpha, beta)

            j = int(gen.integers(0, allowed.shape[0]))
            tau = np.array(pher.tau)
            tau[i, allowed[j]] *= 2.0
            boosted = transition_probabilities(i, allowed, PheromoneField(tau), heur, alpha, beta)
            assert boosted[j] > p[j]
            rest = np.arange(allowed.shape[0]) != j
            assert np.all(boosted[rest] < p[rest])

    def test_two_candidates_by_hand(self):
        tau = np.ones((3, 3))
        tau[0, 1] = tau[1, 0] = 2.0
        eta = np.ones((3, 3))
        np.fill_diagonal(eta, 0.0)
        p = transition_probabilities(0, [1, 2], PheromoneField(tau), HeuristicField(eta), 1.0, 1.0)
        assert p == pytest.approx([2 / 3, 1 / 3], abs=1e-12)

    def test_zero_exponents_give_uniform(self):
        pher, heur = random_fields(SeededRng(0).gen, 5)
        p = transition_probabilities(0, [1, 2, 3, 4], pher, heur, 0.0, 0.0)
        assert np.allclose(p, 0.25)

    def test_large_exponents_do_not_overflow(self):
        pher, heur = random_fields(SeededRng(1).gen, 6)
        p = transition_probabilities(0, [1, 2, 3], pher, heur, 50.0, 50.0)
        assert np.all(np.isfinite(p))
        assert p.sum() == pytest.approx(1.0)

    def test_single_candidate(self):
        pher, heur = random_fields(SeededRng(2).gen, 4)
        assert np.array_equal(transition_probabilities(0, [3], pher, heur, 1.0, 2.0), [1.0])

    def test_invalid_allowed_sets(self):
        pher, heur = random_fields(SeededRng(3).gen, 4)
        with pytest.raises(ValueError):
            transition_probabilities(0, [], pher, heur, 1.0, 2.0)
        with pytest.raises(ValueError):
            transition_probabilities(0, [0, 1], pher, heur, 1.0, 2.0)

    def test_all_zero_weights_fall_back_to_uniform(self):
        assert np.allclose(normalize_log_weights(np.full(4, -np.inf)), 0.25)


class TestPheromoneUpdates:
    def test_evaporate(self):
        pher = PheromoneField.uniform(4, 2.0, 0.5, 4.0)
        assert np.allclose(evaporate(pher, 0.25).tau, 1.5)
        assert np.allclose(evaporate(pher, 0.9).tau, 0.5)
        with pytest.raises(ValueError):
            evaporate(pher, 1.5)

    def test_deposit_is_symmetric(self):
        instance = TspInstance.from_coordinates("sq", SQUARE)
        tour = make_tour(instance, [0, 1, 2, 3])
        pher = deposit(PheromoneField.uniform(4, 0.0), tour, None, 40.0, t=1)
        # q / cost = 40 / 40 on every tour edge
        assert pher.tau[0, 1] == pher.tau[1, 0] == 1.0
        assert pher.tau[3, 0] == 1.0
        assert pher.tau[0, 2] == 0.0
        assert np.array_equal(pher.tau, pher.tau.T)
        assert pher.t == 1

    def test_global_best_reinforced_on_period(self):
        instance = TspInstance.from_coordinates("sq", SQUARE)
        tour = make_tour(instance, [0, 1, 2, 3])
        off = deposit(PheromoneField.uniform(4, 0.0), tour, tour, 40.0, t=4, period=5)
        on = deposit(PheromoneField.uniform(4, 0.0), tour, tour, 40.0, t=5, period=5)
        assert off.tau[0, 1] == 1.0
        assert on.tau[0, 1] == 2.0

    def test_deposit_clamps(self):
        instance = TspInstance.from_coordinates("sq", SQUARE)
        tour = make_tour(instance, [0, 1, 2, 3])
        pher = deposit(PheromoneField.uniform(4, 1.0, 0.5, 1.5), tour, None, 400.0, t=1)
        assert pher.within_bounds()
        assert pher.tau[0, 1] == 1.5

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            PheromoneField.uniform(3, 1.0, 2.0, 1.0)


class TestCandidateLists:
    def test_nearest_first(self):
        instance = TspInstance.from_coordinates("line", [(0, 0), (1, 0), (3, 0), (7, 0)])
        lists = candidate_lists(instance, 2)
        assert [c.tolist() for c in lists] == [[1, 2], [0, 2], [1, 0], [2, 1]]

    def test_size_is_capped(self):
        instance = TspInstance.from_coordinates("sq", SQUARE)
        assert all(c.shape[0] == 3 for c in candidate_lists(instance, 10))
        with pytest.raises(ValueError):
            candidate_lists(instance, 0)
