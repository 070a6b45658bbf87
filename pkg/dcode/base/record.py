# Standard
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

# Local
from dcode.problems.core import Tour


@dataclass
class RunRecord:
    """Per-iteration best-so-far trajectory and accounting of one solver run

    `wall_time` is excluded from equality: two runs with the same config and seed compare
    equal even though their timings differ.
    """

    best_cost_per_iteration: List[float] = field(default_factory=list)
    best_tour: Optional[Tour] = None
    best_point: Optional[Tuple[float, ...]] = None
    evaluations: int = 0
    wall_time: float = field(default=0.0, compare=False)
    iterations_run: int = 0

    # (rho, m) actually used per iteration; empty for solvers without those knobs
    parameter_trace: List[Tuple[float, int]] = field(default_factory=list)
    resets: int = 0

    @property
    def best_cost(self) -> float:
        if not self.best_cost_per_iteration:
            raise ValueError("RunRecord has no iterations")
        return self.best_cost_per_iteration[-1]

    def append(self, cost: float) -> None:
        """Appends the best-so-far cost of a finished iteration"""
        if self.best_cost_per_iteration:
            cost = min(cost, self.best_cost_per_iteration[-1])
        self.best_cost_per_iteration.append(float(cost))
        self.iterations_run = len(self.best_cost_per_iteration)

    def is_non_increasing(self) -> bool:
        c = self.best_cost_per_iteration
        return all(b <= a for a, b in zip(c, c[1:]))
