# Standard
from typing import Dict, Optional, Tuple
import json
import os

# Third Party
from pydantic import BaseModel, ConfigDict, Field, ValidationError

# Local
from dcode.baselines.config import BaselineConfig
from dcode.bench.experiment import ExperimentSpec
from dcode.colony.config import ColonyConfig
from dcode.efficiency.config import ControllerConfig
from dcode.efficiency.controller import EfficiencySchedule
from dcode.simulation.allocation import DE_ADAPTIVE, AllocationPolicy


class ConfigError(ValueError):
    """A config that does not parse or validate; `path` is the dotted location of the problem"""

    def __init__(self, source: str, path: str, message: str) -> None:
        self.source = source
        self.path = path
        super().__init__(f"{source}: {path}: {message}" if path else f"{source}: {message}")


class ScenarioConfig(BaseModel):
    """The `scenario` section: simulator workload and the adaptive policy's settings"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    horizon: int = Field(200, ge=10, description="Timesteps per simulation.")
    n_tasks: int = Field(5, ge=2, description="Competing tasks.")
    review_period: int = Field(5, ge=1, description="Timesteps between reallocations.")
    static_share: Optional[Tuple[float, ...]] = Field(None, description="Static policy shares; equal when omitted.")
    k: Optional[float] = Field(None, gt=0, description="Schedule rate; defaults to 10 / horizon.")
    t0: Optional[float] = Field(None, description="Schedule inflection; defaults to horizon / 3.")
    params: Dict[str, float] = Field(
        default_factory=dict, description="Overrides of the packaged generator constants."
    )

    def policy(self, kind: str) -> AllocationPolicy:
        schedule = None
        if kind == DE_ADAPTIVE:
            default = EfficiencySchedule.for_budget(self.horizon)
            schedule = EfficiencySchedule(
                k=self.k if self.k is not None else default.k,
                t0=self.t0 if self.t0 is not None else default.t0,
            )
        return AllocationPolicy(
            kind=kind, static_share=self.static_share, schedule=schedule, review_period=self.review_period
        )


class CliConfig(BaseModel):
    """Top-level JSON config; every section is optional"""

    model_config = ConfigDict(extra="forbid")

    colony: ColonyConfig = Field(default_factory=ColonyConfig)
    de_controller: ControllerConfig = Field(default_factory=ControllerConfig)
    baseline: BaselineConfig = Field(default_factory=BaselineConfig)
    scenario: ScenarioConfig = Field(default_factory=ScenarioConfig)
    experiment: Optional[ExperimentSpec] = None


def _dotted(loc) -> str:
    return ".".join(str(part) for part in loc)


def validate_config(model, data, source: str):
    """model.model_validate with pydantic errors turned into a ConfigError naming the first bad path"""
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(source, _dotted(first["loc"]), first["msg"]) from e


def read_json(path: str):
    if not os.path.isfile(path):
        raise FileNotFoundError(f"Config file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(path, "", f"invalid JSON at line {e.lineno}: {e.msg}") from e


def load_cli_config(path: Optional[str]) -> CliConfig:
    """The config at `path`, or all defaults when no path is given"""
    if path is None:
        return CliConfig()
    return validate_config(CliConfig, read_json(path), path)
