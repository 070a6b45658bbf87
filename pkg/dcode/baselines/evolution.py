"""Population baselines for continuous problems: a self-adaptive evolution strategy and DE/rand/1/bin."""

# Standard
import math
import time

# Third Party
import numpy as np

# Local
from dcode.base.record import RunRecord
from dcode.base.registry import register_baseline
from dcode.base.solver import CONTINUOUS, BaseSolver
from dcode.baselines.utils import clip_to_bounds, evaluate_rows, uniform_population
from dcode.problems.core import ContinuousProblem
from dcode.problems.functions import evaluate


def _finish(record: RunRecord, best_x: np.ndarray, start_time: float) -> RunRecord:
    record.best_point = tuple(float(v) for v in best_x)
    record.wall_time = time.perf_counter() - start_time
    return record


def run_es(
    problem: ContinuousProblem,
    offspring: int,
    max_iterations: int,
    gen: np.random.Generator,
    mu: int = 5,
    sigma_init: float = 0.1,
    sigma_min: float = 1e-12,
) -> RunRecord:
    """(mu, lambda) strategy with one log-normally self-adapted step size per individual"""
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be at least 1, got {max_iterations}")
    mu = min(int(mu), offspring)
    tau = 1.0 / math.sqrt(problem.dim)
    width = problem.upper - problem.lower
    start_time = time.perf_counter()

    X = uniform_population(problem, offspring, gen)
    sigma = np.full(offspring, sigma_init)
    fitness = evaluate_rows(problem, X)
    record = RunRecord(evaluations=offspring)
    best_idx = int(np.argmin(fitness))
    best_x, best_f = X[best_idx].copy(), float(fitness[best_idx])
    record.append(best_f)

    for _ in range(2, max_iterations + 1):
        parents = np.argsort(fitness, kind="stable")[:mu]
        chosen = parents[gen.integers(0, mu, size=offspring)]
        sigma = np.maximum(sigma[chosen] * np.exp(tau * gen.standard_normal(offspring)), sigma_min)
        noise = gen.standard_normal((offspring, problem.dim))
        X = clip_to_bounds(problem, X[chosen] + sigma[:, None] * width * noise)
        fitness = evaluate_rows(problem, X)
        record.evaluations += offspring
        idx = int(np.argmin(fitness))
        if fitness[idx] < best_f:
            best_x, best_f = X[idx].copy(), float(fitness[idx])
        record.append(best_f)
    return _finish(record, best_x, start_time)


def run_de_rand1bin(
    problem: ContinuousProblem,
    population: int,
    max_iterations: int,
    gen: np.random.Generator,
    F: float = 0.5,
    CR: float = 0.9,
) -> RunRecord:
    """Differential evolution, rand/1 mutation with binomial crossover and greedy replacement

    Trial vectors are clamped into the problem box before evaluation.
    """
    if population < 4:
        raise ValueError(f"de_rand1bin needs a population of at least 4, got {population}")
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be at least 1, got {max_iterations}")
    start_time = time.perf_counter()

    X = uniform_population(problem, population, gen)
    fitness = evaluate_rows(problem, X)
    record = RunRecord(evaluations=population)
    record.append(float(fitness.min()))

    for _ in range(2, max_iterations + 1):
        for i in range(population):
            others = np.delete(np.arange(population), i)
            r1, r2, r3 = gen.choice(others, size=3, replace=False)
            mutant = X[r1] + F * (X[r2] - X[r3])
            cross = gen.random(problem.dim) < CR
            cross[gen.integers(0, problem.dim)] = True
            trial = clip_to_bounds(problem, np.where(cross, mutant, X[i]))
            f_trial = evaluate(problem, trial)
            record.evaluations += 1
            if f_trial <= fitness[i]:
                X[i], fitness[i] = trial, f_trial
        record.append(float(fitness.min()))
    return _finish(record, X[int(np.argmin(fitness))], start_time)


@register_baseline("es")
class EvolutionStrategy(BaseSolver):
    PROBLEM_KIND = CONTINUOUS

    def solve(self, problem, population, max_iterations, rng):
        self.check_problem(problem)
        return run_es(
            problem,
            population,
            max_iterations,
            rng.gen,
            mu=int(self.param("mu")),
            sigma_init=self.param("sigma_init"),
            sigma_min=self.param("sigma_min"),
        )


@register_baseline("de_rand1bin")
class DifferentialEvolution(BaseSolver):
    PROBLEM_KIND = CONTINUOUS

    def solve(self, problem, population, max_iterations, rng):
        self.check_problem(problem)
        return run_de_rand1bin(
            problem, population, max_iterations, rng.gen, F=self.param("F"), CR=self.param("CR")
        )
