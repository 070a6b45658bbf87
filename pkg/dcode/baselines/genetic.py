# Standard
from typing import List
import time

# Third Party
import numpy as np

# Local
from dcode.base.record import RunRecord
from dcode.base.registry import register_baseline
from dcode.base.solver import TSP, BaseSolver
from dcode.problems.core import Tour, TspInstance, make_tour


def order_crossover(p1: np.ndarray, p2: np.ndarray, gen: np.random.Generator) -> np.ndarray:
    """OX: keep a random slice of p1, fill the rest in p2's order starting after the slice"""
    n = p1.shape[0]
    a, b = sorted(int(v) for v in gen.choice(n + 1, size=2, replace=False))
    child = np.full(n, -1, dtype=np.intp)
    child[a:b] = p1[a:b]
    kept = set(child[a:b].tolist())
    fill = [c for c in np.roll(p2, -b) if c not in kept]
    slots = [(b + i) % n for i in range(n - (b - a))]
    child[slots] = fill
    return child


def swap_mutation(order: np.ndarray, rate: float, gen: np.random.Generator) -> np.ndarray:
    order = order.copy()
    n = order.shape[0]
    for i in np.flatnonzero(gen.random(n) < rate):
        j = int(gen.integers(0, n))
        order[i], order[j] = order[j], order[i]
    return order


def _tournament(fitness: np.ndarray, size: int, gen: np.random.Generator) -> int:
    entrants = gen.integers(0, fitness.shape[0], size=size)
    return int(entrants[np.argmin(fitness[entrants])])


def run_ga_tsp(
    instance: TspInstance,
    population: int,
    max_iterations: int,
    gen: np.random.Generator,
    tournament_size: int = 3,
    crossover_rate: float = 0.9,
    mutation_scale: float = 2.0,
    elitism: int = 1,
) -> RunRecord:
    """Generational GA over permutations

    The first iteration evaluates a random population; every later one keeps the `elitism`
    best tours and evaluates only the children that replace the rest.
    """
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be at least 1, got {max_iterations}")
    elitism = min(max(int(elitism), 0), population)
    rate = mutation_scale / instance.n
    start_time = time.perf_counter()

    pop: List[Tour] = [make_tour(instance, gen.permutation(instance.n)) for _ in range(population)]
    record = RunRecord(evaluations=population)
    best = min(pop, key=lambda tour: tour.cost)
    record.append(best.cost)

    for _ in range(2, max_iterations + 1):
        fitness = np.array([tour.cost for tour in pop])
        orders = [np.asarray(tour.order, dtype=np.intp) for tour in pop]
        elite = [pop[i] for i in np.argsort(fitness, kind="stable")[:elitism]]
        children = []
        for _ in range(population - elitism):
            p1 = orders[_tournament(fitness, int(tournament_size), gen)]
            p2 = orders[_tournament(fitness, int(tournament_size), gen)]
            child = order_crossover(p1, p2, gen) if gen.random() < crossover_rate else p1.copy()
            children.append(make_tour(instance, swap_mutation(child, rate, gen)))
        record.evaluations += len(children)
        pop = elite + children

        candidate = min(pop, key=lambda tour: tour.cost)
        if candidate.cost < best.cost:
            best = candidate
        record.append(best.cost)

    record.best_tour = best
    record.wall_time = time.perf_counter() - start_time
    return record


@register_baseline("ga_tsp")
class GeneticTsp(BaseSolver):
    PROBLEM_KIND = TSP

    def solve(self, problem, population, max_iterations, rng):
        self.check_problem(problem)
        return run_ga_tsp(
            problem,
            population,
            max_iterations,
            rng.gen,
            tournament_size=int(self.param("tournament_size")),
            crossover_rate=self.param("crossover_rate"),
            mutation_scale=self.param("mutation_scale"),
            elitism=int(self.param("elitism")),
        )
