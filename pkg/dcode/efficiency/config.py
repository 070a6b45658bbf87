# Standard
from typing import Optional, Tuple

# Third Party
from pydantic import BaseModel, ConfigDict, Field

# Local
from dcode.efficiency.controller import (
    DEFAULT_STAGNATION_EPSILON,
    DEFAULT_STAGNATION_WINDOW,
    CouplingPolicy,
    EfficiencyController,
    EfficiencySchedule,
)


class ControllerConfig(BaseModel):
    """The `de_controller` section of the JSON config"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    enabled: bool = Field(True, description="Couple the colony to the efficiency schedule.")
    k: Optional[float] = Field(None, gt=0, description="Sigmoid rate; defaults to 10 / max_iterations.")
    t0: Optional[float] = Field(None, description="Inflection iteration; defaults to max_iterations / 3.")
    rho_range: Tuple[float, float] = Field((0.02, 0.2), description="Evaporation rate at E->1 and E->0.")
    m_range: Optional[Tuple[int, int]] = Field(
        None, description="Colony size at E->1 and E->0; defaults to (round(m/2), 2m)."
    )
    stagnation_window: int = Field(DEFAULT_STAGNATION_WINDOW, ge=1)
    stagnation_epsilon: float = Field(DEFAULT_STAGNATION_EPSILON, ge=0)
    reset_on_stagnation: bool = True

    def schedule(self, max_iterations: int) -> EfficiencySchedule:
        default = EfficiencySchedule.for_budget(max_iterations)
        return EfficiencySchedule(
            k=self.k if self.k is not None else default.k,
            t0=self.t0 if self.t0 is not None else default.t0,
        )

    def policy(self) -> CouplingPolicy:
        return CouplingPolicy(
            rho_range=self.rho_range,
            m_range=self.m_range,
            stagnation_window=self.stagnation_window,
            stagnation_epsilon=self.stagnation_epsilon,
            reset_on_stagnation=self.reset_on_stagnation,
        )

    def build(self, max_iterations: int) -> Optional[EfficiencyController]:
        """The controller for a run of `max_iterations`, or None when disabled"""
        if not self.enabled:
            return None
        return EfficiencyController(self.schedule(max_iterations), self.policy())
