# Standard
import time

# Third Party
import numpy as np

# Local
from dcode.base.record import RunRecord
from dcode.base.registry import register_baseline
from dcode.base.solver import CONTINUOUS, BaseSolver
from dcode.baselines.utils import clip_to_bounds, evaluate_rows, uniform_population
from dcode.problems.core import ContinuousProblem


def run_pso(
    problem: ContinuousProblem,
    population: int,
    max_iterations: int,
    gen: np.random.Generator,
    inertia: float = 0.729,
    cognitive: float = 1.49445,
    social: float = 1.49445,
    velocity_clamp: float = 0.2,
) -> RunRecord:
    """Global-best particle swarm; velocities are clamped to `velocity_clamp` of the box width"""
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be at least 1, got {max_iterations}")
    start_time = time.perf_counter()
    v_max = velocity_clamp * (problem.upper - problem.lower)

    X = uniform_population(problem, population, gen)
    V = gen.uniform(-v_max, v_max, size=X.shape)
    fitness = evaluate_rows(problem, X)
    p_best, p_fit = X.copy(), fitness.copy()
    g_idx = int(np.argmin(p_fit))
    record = RunRecord(evaluations=population)
    record.append(float(p_fit[g_idx]))

    for _ in range(2, max_iterations + 1):
        r1 = gen.random(X.shape)
        r2 = gen.random(X.shape)
        V = inertia * V + cognitive * r1 * (p_best - X) + social * r2 * (p_best[g_idx] - X)
        V = np.clip(V, -v_max, v_max)
        X = clip_to_bounds(problem, X + V)
        fitness = evaluate_rows(problem, X)
        record.evaluations += population
        improved = fitness < p_fit
        p_best[improved], p_fit[improved] = X[improved], fitness[improved]
        g_idx = int(np.argmin(p_fit))
        record.append(float(p_fit[g_idx]))

    record.best_point = tuple(float(v) for v in p_best[g_idx])
    record.wall_time = time.perf_counter() - start_time
    return record


@register_baseline("pso")
class ParticleSwarm(BaseSolver):
    PROBLEM_KIND = CONTINUOUS

    def solve(self, problem, population, max_iterations, rng):
        self.check_problem(problem)
        return run_pso(
            problem,
            population,
            max_iterations,
            rng.gen,
            inertia=self.param("inertia"),
            cognitive=self.param("cognitive"),
            social=self.param("social"),
            velocity_clamp=self.param("velocity_clamp"),
        )
