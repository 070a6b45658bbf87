# Standard
from typing import Callable, Dict, Optional, Sequence, Tuple

# Third Party
import numpy as np

# Local
from dcode.problems.core import ContinuousProblem

DEFAULT_BOUNDS: Dict[str, Tuple[float, float]] = {
    "sphere": (-5.12, 5.12),
    "rosenbrock": (-2.048, 2.048),
    "rastrigin": (-5.12, 5.12),
}


def sphere(x: np.ndarray) -> float:
    return float(np.dot(x, x))


def sphere_grad(x: np.ndarray) -> np.ndarray:
    return 2.0 * x


def rosenbrock(x: np.ndarray) -> float:
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def rosenbrock_grad(x: np.ndarray) -> np.ndarray:
    g = np.zeros_like(x, dtype=float)
    if x.shape[0] < 2:
        return g
    inner = x[1:] - x[:-1] ** 2
    g[:-1] += -400.0 * x[:-1] * inner - 2.0 * (1.0 - x[:-1])
    g[1:] += 200.0 * inner
    return g


def rastrigin(x: np.ndarray) -> float:
    return float(10.0 * x.shape[0] + np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x)))


def rastrigin_grad(x: np.ndarray) -> np.ndarray:
    return 2.0 * x + 20.0 * np.pi * np.sin(2.0 * np.pi * x)


_OBJECTIVES: Dict[str, Tuple[Callable, Callable]] = {
    "sphere": (sphere, sphere_grad),
    "rosenbrock": (rosenbrock, rosenbrock_grad),
    "rastrigin": (rastrigin, rastrigin_grad),
}


def evaluate(problem: ContinuousProblem, x: Sequence[float]) -> float:
    return _OBJECTIVES[problem.objective_id][0](np.asarray(x, dtype=float))


def gradient(problem: ContinuousProblem, x: Sequence[float]) -> np.ndarray:
    return _OBJECTIVES[problem.objective_id][1](np.asarray(x, dtype=float))


def make_problem(
    objective_id: str,
    dim: int,
    start: Optional[Sequence[float]] = None,
    bounds: Optional[Tuple[float, float]] = None,
) -> ContinuousProblem:
    """Benchmark problem with the standard box and known minimum for `objective_id`"""
    if objective_id not in _OBJECTIVES:
        raise ValueError(
            f"Unknown objective '{objective_id}', valid objectives: {', '.join(_OBJECTIVES)}"
        )
    lo, hi = bounds if bounds is not None else DEFAULT_BOUNDS[objective_id]
    optimum = 1.0 if objective_id == "rosenbrock" else 0.0
    return ContinuousProblem(
        objective_id=objective_id,
        dim=dim,
        bounds=tuple((lo, hi) for _ in range(dim)),
        known_minimum=(tuple(optimum for _ in range(dim)), 0.0),
        start=tuple(float(v) for v in start) if start is not None else None,
    )
