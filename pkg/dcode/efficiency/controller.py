"""Sigmoid dynamic-efficiency schedule and its coupling to live solver parameters."""

# Standard
from dataclasses import dataclass
from typing import Optional, Tuple
import math

# Third Party
from pydantic import BaseModel, ConfigDict, Field, model_validator

# Local
from dcode.base.record import RunRecord
from dcode.colony.config import ColonyConfig
from dcode.utils import dcode_logger

E_FLOOR = 1e-12
E_CEIL = 1.0 - 1e-12

DEFAULT_STAGNATION_WINDOW = 50
DEFAULT_STAGNATION_EPSILON = 1e-4


class EfficiencySchedule(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    k: float = Field(..., gt=0, description="Rate of efficiency change.")
    t0: float = Field(..., description="Inflection iteration.")
    t0_original: Optional[float] = Field(
        None, description="Inflection before any stagnation reset; defaults to t0."
    )

    @model_validator(mode="before")
    @classmethod
    def _default_original(cls, data):
        if isinstance(data, dict) and data.get("t0_original") is None and "t0" in data:
            data = {**data, "t0_original": data["t0"]}
        return data

    @classmethod
    def for_budget(cls, max_iterations: int) -> "EfficiencySchedule":
        """Exploration for the first third of the budget, saturated exploitation by its end"""
        budget = max(int(max_iterations), 1)
        return cls(k=10.0 / budget, t0=budget / 3.0)


class CouplingPolicy(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    rho_range: Tuple[float, float] = Field(
        (0.02, 0.2), description="Evaporation rate at E->1 and at E->0."
    )
    m_range: Optional[Tuple[int, int]] = Field(
        None,
        description="Colony size at E->1 and at E->0; defaults to (round(m/2), 2m) of the base config.",
    )
    stagnation_window: int = Field(DEFAULT_STAGNATION_WINDOW, ge=1)
    stagnation_epsilon: float = Field(DEFAULT_STAGNATION_EPSILON, ge=0)
    reset_on_stagnation: bool = True

    @model_validator(mode="after")
    def _check_ranges(self) -> "CouplingPolicy":
        rho_min, rho_max = self.rho_range
        if not 0 <= rho_min <= rho_max <= 1:
            raise ValueError(f"rho_range must satisfy 0 <= rho_min <= rho_max <= 1, got {self.rho_range}")
        if self.m_range is not None:
            m_min, m_max = self.m_range
            if not 1 <= m_min <= m_max:
                raise ValueError(f"m_range must satisfy 1 <= m_min <= m_max, got {self.m_range}")
        return self

    def resolved_for(self, cfg: ColonyConfig) -> "CouplingPolicy":
        if self.m_range is not None:
            return self
        return self.model_copy(update={"m_range": (max(1, int(math.floor(cfg.m / 2 + 0.5))), 2 * cfg.m)})


def efficiency(sched: EfficiencySchedule, t: float) -> float:
    """E(t) = 1 / (1 + exp(-k (t - t0))), clamped away from 0 and 1"""
    x = sched.k * (t - sched.t0)
    if x >= 0:
        e = 1.0 / (1.0 + math.exp(-x))
    else:
        z = math.exp(x)
        e = z / (1.0 + z)
    return min(max(e, E_FLOOR), E_CEIL)


def recalibrate(cfg: ColonyConfig, policy: CouplingPolicy, E: float) -> ColonyConfig:
    """Maps efficiency onto evaporation rate and colony size

    Low E (early) gives high evaporation and a large colony, high E gives the opposite.
    """
    if not 0 < E < 1:
        raise ValueError(f"Efficiency must lie strictly inside (0, 1), got {E}")
    policy = policy.resolved_for(cfg)
    rho_min, rho_max = policy.rho_range
    m_min, m_max = policy.m_range
    rho_eff = rho_max - E * (rho_max - rho_min)
    m_eff = int(math.floor(m_max - E * (m_max - m_min) + 0.5))
    return cfg.model_copy(
        update={
            "rho": min(max(rho_eff, rho_min), rho_max),
            "m": min(max(m_eff, m_min), m_max),
        }
    )


def detect_stagnation(record: RunRecord, W: int, eps: float) -> bool:
    """True iff the best cost improved by less than `eps` (relative) over the last W iterations"""
    if W < 1:
        raise ValueError(f"Stagnation window must be at least 1, got {W}")
    costs = record.best_cost_per_iteration
    if len(costs) < W:
        return False
    reference = costs[max(0, len(costs) - W - 1)]
    improvement = reference - costs[-1]
    scale = abs(reference)
    if scale == 0:
        return improvement < eps
    return improvement / scale < eps


def reset_inflection(
    sched: EfficiencySchedule, t_now: float, policy: CouplingPolicy
) -> EfficiencySchedule:
    """Restarts the sigmoid at t_now, sending E back toward its early-phase value"""
    if not policy.reset_on_stagnation:
        raise ValueError("reset_inflection requires a policy with reset_on_stagnation enabled")
    return EfficiencySchedule(k=sched.k, t0=t_now + sched.t0_original, t0_original=sched.t0_original)


@dataclass
class EfficiencyController:
    """Schedule plus coupling policy, applied by a solver at iteration boundaries"""

    schedule: EfficiencySchedule
    policy: CouplingPolicy
    last_reset: Optional[int] = None

    def config_for(self, cfg: ColonyConfig, t: int) -> ColonyConfig:
        return recalibrate(cfg, self.policy, efficiency(self.schedule, t))

    def max_colony_size(self, cfg: ColonyConfig) -> int:
        return self.policy.resolved_for(cfg).m_range[1]

    def observe(self, record: RunRecord, t: int) -> bool:
        """Resets the schedule on stagnation; returns whether a reset happened

        After a reset the next check waits a full window, otherwise the still-flat trajectory
        would re-trigger every iteration.
        """
        if not self.policy.reset_on_stagnation:
            return False
        W = self.policy.stagnation_window
        if self.last_reset is not None and t - self.last_reset < W:
            return False
        if not detect_stagnation(record, W, self.policy.stagnation_epsilon):
            return False
        self.schedule = reset_inflection(self.schedule, t, self.policy)
        self.last_reset = t
        dcode_logger.debug("Stagnation at iteration %s, inflection moved to %.1f", t, self.schedule.t0)
        return True
