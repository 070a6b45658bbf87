# Standard
from typing import Optional

# Third Party
from pydantic import BaseModel, ConfigDict, Field


class ColonyConfig(BaseModel):
    """Parameters of the colony solver; the `colony` section of the JSON config"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    alpha: float = Field(1.0, ge=0, description="Pheromone exponent.")
    beta: float = Field(2.0, ge=0, description="Heuristic exponent.")
    rho: float = Field(0.1, ge=0, le=1, description="Evaporation rate.")
    m: int = Field(25, ge=1, description="Ants per iteration.")
    q_deposit: float = Field(1.0, gt=0, description="Deposit constant.")
    max_iterations: int = Field(500, ge=1, description="Iteration budget.")
    candidate_list_size: int = Field(
        0, ge=0, description="k-nearest candidate lists per city, 0 disables them."
    )
    tau_init: Optional[float] = Field(
        None,
        gt=0,
        description="Initial pheromone; defaults to 1/(rho * nearest-neighbour tour cost).",
    )
    use_bounds: bool = Field(True, description="Clamp pheromone to [tau_min, tau_max].")
    global_best_period: int = Field(
        5, ge=1, description="Global-best tour is reinforced every this many iterations."
    )
