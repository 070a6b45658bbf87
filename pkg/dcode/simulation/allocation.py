# Standard
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Sequence, Tuple
import csv
import os

# Third Party
from pydantic import BaseModel, ConfigDict, Field, model_validator
import numpy as np

# Local
from dcode.efficiency.controller import EfficiencySchedule, efficiency
from dcode.simulation.scenarios import Scenario
from dcode.utils import dcode_logger, dump_json

STATIC = "static"
DE_ADAPTIVE = "de_adaptive"


class AllocationPolicy(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["static", "de_adaptive"] = STATIC
    static_share: Optional[Tuple[float, ...]] = Field(
        None, description="Fixed per-task capacity fractions; equal shares when omitted."
    )
    schedule: Optional[EfficiencySchedule] = Field(
        None, description="Responsiveness schedule of the adaptive policy; derived from the horizon when omitted."
    )
    review_period: int = Field(5, ge=1, description="Timesteps between reallocations.")

    @model_validator(mode="after")
    def _check_shares(self) -> "AllocationPolicy":
        if self.static_share is not None:
            shares = np.asarray(self.static_share)
            if np.any(shares < 0) or abs(shares.sum() - 1.0) > 1e-9:
                raise ValueError(f"static_share must be nonnegative and sum to 1, got {self.static_share}")
        return self

    def shares_for(self, n_tasks: int) -> np.ndarray:
        if self.static_share is None:
            return np.full(n_tasks, 1.0 / n_tasks)
        if len(self.static_share) != n_tasks:
            raise ValueError(
                f"Policy has {len(self.static_share)} shares, scenario has {n_tasks} tasks"
            )
        return np.asarray(self.static_share, dtype=float)


@dataclass(frozen=True, eq=False)
class UtilizationTrace:
    scenario: Scenario
    policy: str
    allocations: np.ndarray
    served: np.ndarray

    @property
    def utilization(self) -> np.ndarray:
        """Served demand over capacity per timestep"""
        return np.clip(self.served.sum(axis=1) / self.scenario.capacity, 0.0, 1.0)

    @property
    def mean_percent(self) -> float:
        return float(100.0 * self.utilization.mean())

    def to_csv(self, path: str) -> None:
        n = self.scenario.n_tasks
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(
                ["timestep"]
                + [f"demand_{i}" for i in range(n)]
                + [f"allocation_{i}" for i in range(n)]
                + ["utilization"]
            )
            for t in range(self.scenario.horizon):
                writer.writerow(
                    [t]
                    + [f"{v:.6f}" for v in self.scenario.demands[t]]
                    + [f"{v:.6f}" for v in self.allocations[t]]
                    + [f"{self.utilization[t]:.6f}"]
                )


def _forecast_shares(forecast: np.ndarray) -> np.ndarray:
    total = forecast.sum()
    if total <= 0:
        return np.full(forecast.shape[0], 1.0 / forecast.shape[0])
    return forecast / total


def simulate(scenario: Scenario, policy: AllocationPolicy) -> UtilizationTrace:
    """Discrete-time allocation; every task is served min(demand, allocation)

    The adaptive policy starts from the static shares and, every `review_period` steps,
    reallocates in proportion to the forecast E(t) * d(t-1) + (1 - E(t)) * mean(d(0..t-1)).
    """
    H, n = scenario.demands.shape
    shares = policy.shares_for(n)
    schedule = policy.schedule or EfficiencySchedule.for_budget(H)

    allocations = np.empty((H, n))
    running_total = np.zeros(n)
    for t in range(H):
        if policy.kind == DE_ADAPTIVE and t > 0 and t % policy.review_period == 0:
            E = efficiency(schedule, t)
            forecast = E * scenario.demands[t - 1] + (1.0 - E) * running_total / t
            shares = _forecast_shares(forecast)
        allocations[t] = shares * scenario.capacity[t]
        running_total += scenario.demands[t]

    served = np.minimum(scenario.demands, allocations)
    trace = UtilizationTrace(scenario, policy.kind, allocations, served)
    dcode_logger.debug("%s under %s: mean utilization %.2f%%", scenario.name, policy.kind, trace.mean_percent)
    return trace


def optimization_gain(before: float, after: float) -> float:
    """Relative change 100 (after - before) / before, in percent"""
    if before <= 0:
        raise ValueError(f"Utilization before must be positive, got {before}")
    return 100.0 * (after - before) / before


def summary_row(
    name: str, before: Optional[UtilizationTrace], after: Optional[UtilizationTrace]
) -> Dict[str, float]:
    """One summary row; the gain is present only when both policies ran"""
    row: Dict[str, float] = {"scenario": name}
    if before is not None:
        row["before"] = round(before.mean_percent, 1)
    if after is not None:
        row["after"] = round(after.mean_percent, 1)
    if before is not None and after is not None:
        row["gain"] = round(optimization_gain(before.mean_percent, after.mean_percent), 1)
    return row


def write_summary(rows: Sequence[Dict[str, float]], path: str) -> Dict:
    """Summary JSON: the per-scenario rows plus their row-wise mean gain"""
    summary: Dict[str, object] = {"scenarios": list(rows)}
    gains: List[float] = [row["gain"] for row in rows if "gain" in row]
    if gains:
        summary["mean_gain"] = round(float(np.mean(gains)), 1)
    dump_json(summary, path)
    return summary
