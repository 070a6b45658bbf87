# Standard
from abc import ABC
from typing import Any, Dict, Union
import abc

# Local
from dcode.base.record import RunRecord
from dcode.problems.core import ContinuousProblem, TspInstance
from dcode.problems.rng import SeededRng

TSP = "tsp"
CONTINUOUS = "continuous"


def problem_kind(problem: Union[TspInstance, ContinuousProblem]) -> str:
    if isinstance(problem, TspInstance):
        return TSP
    if isinstance(problem, ContinuousProblem):
        return CONTINUOUS
    raise ValueError(f"Unsupported problem type {type(problem).__name__}")


class BaseSolver(ABC):
    """Base Class for all registered solvers"""

    # problem kind this solver accepts, one of TSP / CONTINUOUS
    PROBLEM_KIND: str = None

    def __init__(self, name: str, config: Dict, **kwargs: Any) -> None:
        self._name = name
        self._config: Dict = dict(config)

        # overwrite config fields with kwargs (usually these will be command line args)
        self._config.update(kwargs)

    @property
    def name(self):
        return self._name

    @property
    def config(self):
        return self._config

    def check_problem(self, problem: Union[TspInstance, ContinuousProblem]) -> None:
        kind = problem_kind(problem)
        if kind != self.PROBLEM_KIND:
            raise ValueError(
                f"Algorithm '{self.name}' solves {self.PROBLEM_KIND} problems, got a {kind} problem"
            )

    def param(self, key: str) -> float:
        try:
            return self.config[key]
        except KeyError:
            raise ValueError(f"Algorithm '{self.name}' is missing parameter '{key}'")

    @abc.abstractmethod
    def solve(
        self,
        problem: Union[TspInstance, ContinuousProblem],
        population: int,
        max_iterations: int,
        rng: SeededRng,
    ) -> RunRecord:
        raise NotImplementedError
