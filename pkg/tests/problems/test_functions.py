# Third Party
import numpy as np
import pytest

# Local
from dcode.problems.functions import evaluate, gradient, make_problem
from dcode.problems.rng import SeededRng

FD_STEP = 1e-6


def central_difference(problem, x):
    g = np.zeros_like(x)
    for i in range(x.shape[0]):
        e = np.zeros_like(x)
        e[i] = FD_STEP
        g[i] = (evaluate(problem, x + e) - evaluate(problem, x - e)) / (2 * FD_STEP)
    return g


class TestBenchmarkFunctions:
    @pytest.mark.parametrize("objective_id", ["sphere", "rosenbrock", "rastrigin"])
    def test_minimum_value(self, objective_id):
        problem = make_problem(objective_id, 5)
        loc, value = problem.known_minimum
        assert evaluate(problem, loc) == pytest.approx(value, abs=1e-12)
        assert np.allclose(gradient(problem, loc), 0.0, atol=1e-9)

    @pytest.mark.parametrize("objective_id", ["sphere", "rosenbrock", "rastrigin"])
    def test_gradient_matches_finite_differences(self, objective_id):
        problem = make_problem(objective_id, 6)
        gen = SeededRng(11).gen
        for _ in range(100):
            x = gen.uniform(problem.lower, problem.upper)
            analytic = gradient(problem, x)
            numeric = central_difference(problem, x)
            error = np.linalg.norm(analytic - numeric) / max(1.0, np.linalg.norm(analytic))
            assert error < 1e-5, f"{objective_id} gradient off by {error} at {x}"

    def test_known_values(self):
        assert evaluate(make_problem("sphere", 3), [1.0, 2.0, 2.0]) == 9.0
        # rosenbrock(0, 0) = (1 - 0)^2
        assert evaluate(make_problem("rosenbrock", 2), [0.0, 0.0]) == 1.0
        # rastrigin at integers is the sum of squares
        assert evaluate(make_problem("rastrigin", 2), [1.0, 2.0]) == pytest.approx(5.0)

    def test_one_dimensional_rosenbrock(self):
        problem = make_problem("rosenbrock", 1)
        assert evaluate(problem, [0.3]) == 0.0
        assert np.array_equal(gradient(problem, [0.3]), [0.0])
