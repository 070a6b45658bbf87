# Third Party
import numpy as np

# Local
from dcode.problems.core import ContinuousProblem
from dcode.problems.functions import evaluate


def uniform_population(problem: ContinuousProblem, size: int, gen: np.random.Generator) -> np.ndarray:
    return gen.uniform(problem.lower, problem.upper, size=(size, problem.dim))


def start_point(problem: ContinuousProblem, gen: np.random.Generator) -> np.ndarray:
    """The problem's start point, else a uniform draw from its box"""
    if problem.start is not None:
        return np.array(problem.start, dtype=float)
    return uniform_population(problem, 1, gen)[0]


def clip_to_bounds(problem: ContinuousProblem, X: np.ndarray) -> np.ndarray:
    return np.clip(X, problem.lower, problem.upper)


def evaluate_rows(problem: ContinuousProblem, X: np.ndarray) -> np.ndarray:
    return np.array([evaluate(problem, x) for x in X])
