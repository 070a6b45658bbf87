# Third Party
import numpy as np
import pytest

# Local
from dcode.problems.core import (
    ContinuousProblem,
    TspInstance,
    make_tour,
    nearest_neighbor_tour,
    tour_cost,
)
from dcode.problems.functions import DEFAULT_BOUNDS, make_problem
from dcode.problems.generators import random_euclidean_instance
from dcode.problems.rng import SeededRng

TRIANGLE = [(0, 0), (3, 0), (0, 4)]
SQUARE = [(0, 0), (10, 0), (10, 10), (0, 10)]


class TestTspInstance:
    def test_from_coordinates(self):
        instance = TspInstance.from_coordinates("tri", TRIANGLE)
        assert instance.n == 3
        assert np.array_equal(instance.distances, [[0, 3, 4], [3, 0, 5], [4, 5, 0]])
        assert not instance.distances.flags.writeable

    def test_euc_2d_rounding(self):
        instance = TspInstance.from_coordinates("sq", SQUARE)
        # diagonal sqrt(200) = 14.14 rounds to 14
        assert instance.distances[0, 2] == 14
        unrounded = TspInstance.from_coordinates("sq", SQUARE, round_distances=False)
        assert unrounded.distances[0, 2] == pytest.approx(np.sqrt(200))

    @pytest.mark.parametrize(
        "matrix",
        [
            [[0, 1], [1, 0]],
            [[0, 1, 2], [1, 0, 3], [2, 4, 0]],
            [[0, 1, 2], [1, 0, 3], [2, 3, 1]],
            [[0, -1, 2], [-1, 0, 3], [2, 3, 0]],
            [[0, 1, np.inf], [1, 0, 3], [np.inf, 3, 0]],
        ],
    )
    def test_rejects_invalid_matrices(self, matrix):
        with pytest.raises(ValueError):
            TspInstance.from_matrix("bad", matrix)

    def test_best_known_must_be_positive(self):
        with pytest.raises(ValueError):
            TspInstance.from_coordinates("tri", TRIANGLE, best_known=0)
        instance = TspInstance.from_coordinates("tri", TRIANGLE).with_best_known(12)
        assert instance.best_known == 12


class TestTours:
    def test_tour_cost_closes_the_cycle(self):
        instance = TspInstance.from_coordinates("tri", TRIANGLE)
        assert tour_cost(instance, [0, 1, 2]) == 12
        assert tour_cost(instance, [2, 0, 1]) == 12
        assert make_tour(instance, [1, 0, 2]).cost == 12

    @pytest.mark.parametrize("order", [[0, 1], [0, 1, 1], [0, 1, 3], [[0, 1, 2]]])
    def test_tour_must_be_permutation(self, order):
        instance = TspInstance.from_coordinates("tri", TRIANGLE)
        with pytest.raises(ValueError):
            tour_cost(instance, order)

    def test_nearest_neighbor_tour(self):
        instance = TspInstance.from_coordinates("sq", SQUARE)
        tour = nearest_neighbor_tour(instance, 0)
        # 1 and 3 tie from city 0, the lower index wins
        assert tour.order == (0, 1, 2, 3)
        assert tour.cost == 40

    def test_random_euclidean_instance(self):
        a = random_euclidean_instance(20, SeededRng(3))
        b = random_euclidean_instance(20, SeededRng(3))
        c = random_euclidean_instance(20, SeededRng(4))
        assert a.name == "rand20"
        assert np.array_equal(a.distances, b.distances)
        assert not np.array_equal(a.distances, c.distances)
        assert np.all((a.coords >= 0) & (a.coords <= 1000))


class TestContinuousProblem:
    @pytest.mark.parametrize("objective_id", ["sphere", "rosenbrock", "rastrigin"])
    def test_make_problem(self, objective_id):
        problem = make_problem(objective_id, 4)
        assert problem.dim == 4
        assert problem.bounds == tuple(DEFAULT_BOUNDS[objective_id] for _ in range(4))
        loc, value = problem.known_minimum
        assert problem.contains(loc)
        assert value == 0.0

    def test_unknown_objective(self):
        with pytest.raises(ValueError, match="valid objectives"):
            make_problem("ackley", 2)

    def test_start_must_be_inside_bounds(self):
        assert make_problem("sphere", 2, start=[1.0, -1.0]).start == (1.0, -1.0)
        with pytest.raises(ValueError):
            make_problem("sphere", 2, start=[10.0, 0.0])
        with pytest.raises(ValueError):
            make_problem("sphere", 2, start=[0.0])

    def test_bounds_need_positive_width(self):
        with pytest.raises(ValueError):
            ContinuousProblem("sphere", 1, bounds=((1.0, 1.0),))
