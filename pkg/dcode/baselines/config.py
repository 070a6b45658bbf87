# Standard
from functools import lru_cache
from typing import Dict, Optional
import os

# Third Party
from pydantic import BaseModel, ConfigDict, Field, model_validator

# Local
from dcode.utils import load_yaml_config

DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), "defaults.yaml")


@lru_cache(maxsize=None)
def _packaged_defaults() -> Dict[str, Dict[str, Optional[float]]]:
    return load_yaml_config(DEFAULTS_PATH)


def baseline_defaults(algorithm_id: str) -> Dict[str, Optional[float]]:
    defaults = _packaged_defaults()
    if algorithm_id not in defaults:
        raise ValueError(
            f"Unknown algorithm '{algorithm_id}', valid algorithms: {', '.join(sorted(defaults))}"
        )
    return dict(defaults[algorithm_id])


class BaselineConfig(BaseModel):
    """The `baseline` section of the JSON config"""

    model_config = ConfigDict(extra="forbid")

    algorithm_id: str = Field("aco_classic", description="Registered baseline to run.")
    population: int = Field(25, ge=1, description="Ants, individuals or particles per iteration.")
    max_iterations: int = Field(500, ge=1, description="Iteration budget.")
    params: Dict[str, float] = Field(
        default_factory=dict,
        description="Algorithm-specific overrides of the packaged defaults.",
    )

    @model_validator(mode="after")
    def _check_params(self) -> "BaselineConfig":
        known = baseline_defaults(self.algorithm_id)
        unknown = sorted(set(self.params) - set(known))
        if unknown:
            raise ValueError(
                f"Unknown parameters for '{self.algorithm_id}': {', '.join(unknown)}; valid parameters: {', '.join(sorted(known))}"
            )
        return self

    def resolved_params(self) -> Dict[str, float]:
        """Packaged defaults overlaid with `params`; budget-derived (null) entries are left out"""
        merged = {**baseline_defaults(self.algorithm_id), **self.params}
        return {k: v for k, v in merged.items() if v is not None}
