# Standard
from typing import Callable

# Local
from dcode.base.solver import BaseSolver

BASELINE_REGISTRY = {}


def register_baseline(*names):
    # either pass a list or a single alias.
    # function receives them as a tuple of strings

    def decorate(cls):
        for name in names:
            assert issubclass(
                cls, BaseSolver
            ), f"Baseline '{name}' ({cls.__name__}) must extend BaseSolver class"

            assert (
                name not in BASELINE_REGISTRY
            ), f"Baseline named '{name}' conflicts with existing baseline! Please register with a non-conflicting alias instead."

            BASELINE_REGISTRY[name] = cls
        return cls

    return decorate


def get_baseline(name):
    try:
        return BASELINE_REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"Attempted to load baseline '{name}', but no baseline for this name found! Supported baseline names: {', '.join(sorted(BASELINE_REGISTRY.keys()))}"
        )


SCENARIO_REGISTRY = {}


def register_scenario(name):
    def decorate(fn: Callable):
        assert (
            name not in SCENARIO_REGISTRY
        ), f"scenario named '{name}' conflicts with existing registered scenario!"

        SCENARIO_REGISTRY[name] = fn
        return fn

    return decorate


def get_scenario(name):
    try:
        return SCENARIO_REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"Attempted to load scenario '{name}', but no scenario for this name found! Valid scenario names: {', '.join(sorted(SCENARIO_REGISTRY.keys()))}"
        )
