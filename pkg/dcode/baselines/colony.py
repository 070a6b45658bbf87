# Local
from dcode.base.registry import register_baseline
from dcode.base.solver import TSP, BaseSolver
from dcode.colony.config import ColonyConfig
from dcode.colony.engine import run_dco


@register_baseline("aco_classic")
class ClassicColony(BaseSolver):
    """The colony solver with fixed parameters, i.e. run_dco without an efficiency controller"""

    PROBLEM_KIND = TSP

    def colony_config(self, population: int, max_iterations: int) -> ColonyConfig:
        return ColonyConfig(
            alpha=self.param("alpha"),
            beta=self.param("beta"),
            rho=self.param("rho"),
            q_deposit=self.param("q_deposit"),
            global_best_period=int(self.param("global_best_period")),
            m=population,
            max_iterations=max_iterations,
        )

    def solve(self, problem, population, max_iterations, rng):
        self.check_problem(problem)
        return run_dco(
            problem,
            self.colony_config(population, max_iterations),
            None,
            rng,
            threads=self.config.get("threads", 1),
        )
