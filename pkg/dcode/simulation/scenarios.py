"""Synthetic multi-task demand scenarios for the allocation simulator."""

# Standard
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Mapping, Optional, Tuple
import math
import os

# Third Party
import numpy as np

# Local
from dcode.base.registry import SCENARIO_REGISTRY, get_scenario, register_scenario
from dcode.problems.rng import SeededRng
from dcode.utils import load_yaml_config

DEFAULTS_PATH = os.path.join(os.path.dirname(__file__), "defaults.yaml")
MIN_HORIZON = 10
MIN_TASKS = 2


@dataclass(frozen=True, eq=False)
class Scenario:
    """Per-timestep, per-task demand and the total capacity available at every timestep"""

    name: str
    demands: np.ndarray
    capacity: np.ndarray
    spike_steps: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        demands = np.array(self.demands, dtype=float)
        capacity = np.array(self.capacity, dtype=float)
        if demands.ndim != 2:
            raise ValueError(f"Scenario {self.name}: demands must be a (horizon, tasks) array")
        if capacity.shape != (demands.shape[0],):
            raise ValueError(
                f"Scenario {self.name}: expected {demands.shape[0]} capacity values, got {capacity.shape}"
            )
        if not np.all(np.isfinite(demands)) or np.any(demands < 0):
            raise ValueError(f"Scenario {self.name}: demands must be finite and nonnegative")
        if not np.all(np.isfinite(capacity)) or np.any(capacity <= 0):
            raise ValueError(f"Scenario {self.name}: capacity must be positive at every timestep")
        object.__setattr__(self, "demands", demands)
        object.__setattr__(self, "capacity", capacity)

    @property
    def horizon(self) -> int:
        return self.demands.shape[0]

    @property
    def n_tasks(self) -> int:
        return self.demands.shape[1]


@lru_cache(maxsize=None)
def _packaged_defaults() -> Dict[str, Dict[str, float]]:
    return load_yaml_config(DEFAULTS_PATH)


def scenario_defaults(kind: str) -> Dict[str, float]:
    return dict(_packaged_defaults().get(kind, {}))


def _base_demands(n_tasks: int, gen: np.random.Generator, params: Mapping[str, float]) -> np.ndarray:
    shares = gen.dirichlet(np.full(n_tasks, params["demand_concentration"]))
    return params["base_level"] * n_tasks * shares


def _scenario(name: str, demands: np.ndarray, params: Mapping[str, float], **kwargs: Any) -> Scenario:
    capacity = params["capacity_factor"] * demands.sum(axis=1).mean()
    return Scenario(name, demands, np.full(demands.shape[0], capacity), **kwargs)


@register_scenario("high_demand")
def high_demand(horizon: int, n_tasks: int, gen: np.random.Generator, params: Mapping[str, float]) -> Scenario:
    """Seasonal demand swinging between base and peak_factor * base, with a per-task phase"""
    base = _base_demands(n_tasks, gen, params)
    phase = gen.uniform(0.0, 2.0 * math.pi, size=n_tasks)
    t = np.arange(horizon)[:, None]
    season = 0.5 + 0.5 * np.sin(2.0 * math.pi * t / params["period"] + phase[None, :])
    demands = base[None, :] * (1.0 + (params["peak_factor"] - 1.0) * season)
    return _scenario("high_demand", demands, params)


@register_scenario("emergency")
def emergency(horizon: int, n_tasks: int, gen: np.random.Generator, params: Mapping[str, float]) -> Scenario:
    """Flat demand; one random task spikes by spike_factor over a contiguous burst at a random onset"""
    base = _base_demands(n_tasks, gen, params)
    length = math.ceil(params["spike_fraction"] * horizon)
    onset = int(gen.integers(0, horizon - length + 1))
    task = int(gen.integers(0, n_tasks))
    demands = np.tile(base, (horizon, 1))
    demands[onset : onset + length, task] *= params["spike_factor"]
    return _scenario(
        "emergency", demands, params, spike_steps=tuple(range(onset, onset + length))
    )


@register_scenario("scalability")
def scalability(horizon: int, n_tasks: int, gen: np.random.Generator, params: Mapping[str, float]) -> Scenario:
    """Demand ramping linearly from base to ramp_factor * base"""
    base = _base_demands(n_tasks, gen, params)
    ramp = np.linspace(1.0, params["ramp_factor"], horizon)
    return _scenario("scalability", ramp[:, None] * base[None, :], params)


def generate_scenario(
    kind: str,
    horizon: int,
    n_tasks: int,
    rng: SeededRng,
    params: Optional[Mapping[str, float]] = None,
) -> Scenario:
    """Builds a registered scenario; `params` overrides the packaged generator constants"""
    generator = get_scenario(kind)
    if horizon < MIN_HORIZON:
        raise ValueError(f"horizon must be at least {MIN_HORIZON}, got {horizon}")
    if n_tasks < MIN_TASKS:
        raise ValueError(f"n_tasks must be at least {MIN_TASKS}, got {n_tasks}")
    defaults = scenario_defaults(kind)
    params = dict(params or {})
    unknown = sorted(set(params) - set(defaults))
    if defaults and unknown:
        raise ValueError(
            f"Unknown parameters for scenario '{kind}': {', '.join(unknown)}; valid parameters: {', '.join(sorted(defaults))}"
        )
    return generator(horizon, n_tasks, rng.gen, {**defaults, **params})


def scenario_names() -> Tuple[str, ...]:
    return tuple(sorted(SCENARIO_REGISTRY))
