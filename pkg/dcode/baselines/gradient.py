"""Gradient-descent baselines: a fixed step, and a step boosted by the efficiency schedule."""

# Standard
from typing import Tuple
import time

# Third Party
import numpy as np

# Local
from dcode.base.record import RunRecord
from dcode.base.registry import register_baseline
from dcode.base.solver import CONTINUOUS, BaseSolver
from dcode.baselines.utils import clip_to_bounds, start_point
from dcode.efficiency.controller import EfficiencySchedule, efficiency
from dcode.problems.core import ContinuousProblem
from dcode.problems.functions import evaluate, gradient
from dcode.problems.rng import SeededRng
from dcode.utils import dcode_logger


class NonFiniteGradientError(ArithmeticError):
    def __init__(self, problem: ContinuousProblem, iteration: int, point: np.ndarray) -> None:
        self.iteration = iteration
        self.point = tuple(float(v) for v in point)
        super().__init__(
            f"Non-finite gradient of {problem.objective_id} at iteration {iteration}, x = {list(self.point)}"
        )


def _descent_direction(problem: ContinuousProblem, x: np.ndarray, t: int) -> np.ndarray:
    g = gradient(problem, x)
    if not np.all(np.isfinite(g)):
        raise NonFiniteGradientError(problem, t, x)
    return g


def _start(problem: ContinuousProblem, rng: SeededRng, max_iterations: int) -> Tuple[np.ndarray, float, RunRecord]:
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be at least 1, got {max_iterations}")
    x = start_point(problem, rng.gen)
    fx = evaluate(problem, x)
    record = RunRecord(evaluations=1)
    record.append(fx)
    return x, fx, record


def run_tgd(problem: ContinuousProblem, step: float, max_iterations: int, rng: SeededRng) -> RunRecord:
    """Projected gradient descent with a constant step; one evaluation per iteration"""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    start_time = time.perf_counter()
    x, fx, record = _start(problem, rng, max_iterations)
    best_x, best_f = x, fx
    for t in range(2, max_iterations + 1):
        x = clip_to_bounds(problem, x - step * _descent_direction(problem, x, t))
        fx = evaluate(problem, x)
        record.evaluations += 1
        if fx < best_f:
            best_x, best_f = x, fx
        record.append(fx)
    record.best_point = tuple(float(v) for v in best_x)
    record.wall_time = time.perf_counter() - start_time
    return record


def run_dgd(
    problem: ContinuousProblem,
    sched: EfficiencySchedule,
    base_step: float,
    max_iterations: int,
    rng: SeededRng,
    boost: float = 3.0,
    max_halvings: int = 30,
) -> RunRecord:
    """Gradient descent whose step grows with efficiency, eta(t) = base_step (1 + E(t) (boost - 1))

    A step that raises the objective is halved until it descends or `max_halvings` is reached,
    in which case the iterate stays put. Every evaluation, including the halving retries, is
    drawn from a budget of `max_iterations` evaluations; the run ends when it is spent.
    """
    if base_step <= 0:
        raise ValueError(f"base_step must be positive, got {base_step}")
    if boost < 1:
        raise ValueError(f"boost must be at least 1, got {boost}")
    start_time = time.perf_counter()
    x, fx, record = _start(problem, rng, max_iterations)
    t = 1
    while record.evaluations < max_iterations:
        t += 1
        step = base_step * (1.0 + efficiency(sched, t) * (boost - 1.0))
        g = _descent_direction(problem, x, t)
        candidate = clip_to_bounds(problem, x - step * g)
        fc = evaluate(problem, candidate)
        record.evaluations += 1

        halvings = 0
        while fc > fx and halvings < max_halvings and record.evaluations < max_iterations:
            step /= 2.0
            candidate = clip_to_bounds(problem, x - step * g)
            fc = evaluate(problem, candidate)
            record.evaluations += 1
            halvings += 1
        if halvings:
            dcode_logger.debug("Iteration %s: step halved %s times to %.3g", t, halvings, step)

        if fc <= fx:
            x, fx = candidate, fc
        record.append(fx)

    record.best_point = tuple(float(v) for v in x)
    record.wall_time = time.perf_counter() - start_time
    return record


@register_baseline("tgd")
class TraditionalGradientDescent(BaseSolver):
    PROBLEM_KIND = CONTINUOUS

    def solve(self, problem, population, max_iterations, rng):
        self.check_problem(problem)
        return run_tgd(problem, self.param("step"), max_iterations, rng)


@register_baseline("dgd")
class DynamicGradientDescent(BaseSolver):
    """`schedule_k` and `schedule_t0` default to the budget-derived schedule"""

    PROBLEM_KIND = CONTINUOUS

    def schedule(self, max_iterations: int) -> EfficiencySchedule:
        default = EfficiencySchedule.for_budget(max_iterations)
        return EfficiencySchedule(
            k=self.config.get("schedule_k", default.k),
            t0=self.config.get("schedule_t0", default.t0),
        )

    def solve(self, problem, population, max_iterations, rng):
        self.check_problem(problem)
        return run_dgd(
            problem,
            self.schedule(max_iterations),
            self.param("step"),
            max_iterations,
            rng,
            boost=self.param("boost"),
            max_halvings=int(self.param("max_halvings")),
        )
