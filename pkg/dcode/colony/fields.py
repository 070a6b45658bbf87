# Standard
from dataclasses import dataclass
from typing import List, Optional, Sequence
import math

# Third Party
import numpy as np

# Local
from dcode.problems.core import Tour, TspInstance

DISTANCE_FLOOR = 1e-6


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PheromoneField:
    """Edge pheromone tau with clamp bounds and the iteration it was last updated at"""

    tau: np.ndarray
    tau_min: float = 0.0
    tau_max: float = math.inf
    t: int = 0

    def __post_init__(self) -> None:
        if self.tau_min < 0 or self.tau_min > self.tau_max:
            raise ValueError(f"Need 0 <= tau_min <= tau_max, got {self.tau_min}, {self.tau_max}")
        if np.any(self.tau < 0):
            raise ValueError("Pheromone must be nonnegative")
        if self.tau.flags.writeable:
            object.__setattr__(self, "tau", _frozen(np.array(self.tau, dtype=float)))

    @classmethod
    def uniform(
        cls, n: int, tau_init: float, tau_min: float = 0.0, tau_max: float = math.inf
    ) -> "PheromoneField":
        return cls(np.full((n, n), float(tau_init)), tau_min, tau_max, 0)

    @property
    def n(self) -> int:
        return self.tau.shape[0]

    def clamp(self, tau: np.ndarray) -> np.ndarray:
        return np.clip(tau, self.tau_min, self.tau_max)

    def within_bounds(self) -> bool:
        return bool(np.all(self.tau >= self.tau_min) and np.all(self.tau <= self.tau_max))


@dataclass(frozen=True, eq=False)
class HeuristicField:
    """Static desirability eta = 1/d, with zero distances floored at 1e-6"""

    eta: np.ndarray

    @classmethod
    def from_instance(cls, instance: TspInstance) -> "HeuristicField":
        eta = 1.0 / np.maximum(instance.distances, DISTANCE_FLOOR)
        np.fill_diagonal(eta, 0.0)
        return cls(_frozen(eta))


def evaporate(pher: PheromoneField, rho: float) -> PheromoneField:
    """tau <- (1 - rho) tau, then clamped to the field's bounds"""
    if not 0 <= rho <= 1:
        raise ValueError(f"Evaporation rate must lie in [0, 1], got {rho}")
    return PheromoneField(pher.clamp((1.0 - rho) * pher.tau), pher.tau_min, pher.tau_max, pher.t)


def _add_tour(tau: np.ndarray, tour: Tour, amount: float) -> None:
    a = np.asarray(tour.order, dtype=np.intp)
    b = np.roll(a, -1)
    np.add.at(tau, (a, b), amount)
    np.add.at(tau, (b, a), amount)


def deposit(
    pher: PheromoneField,
    iteration_best: Tour,
    global_best: Optional[Tour],
    q_deposit: float,
    t: int,
    period: int = 5,
) -> PheromoneField:
    """Adds q/cost on the iteration-best edges, and on the global-best edges every `period`-th iteration"""
    tau = np.array(pher.tau)
    _add_tour(tau, iteration_best, q_deposit / max(iteration_best.cost, DISTANCE_FLOOR))
    if global_best is not None and t % period == 0:
        _add_tour(tau, global_best, q_deposit / max(global_best.cost, DISTANCE_FLOOR))
    return PheromoneField(pher.clamp(tau), pher.tau_min, pher.tau_max, t)


def log_weights(tau: np.ndarray, eta: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """alpha log tau + beta log eta; a zero exponent drops its factor entirely (0^0 = 1)"""
    lw = np.zeros(np.shape(tau), dtype=float)
    with np.errstate(divide="ignore"):
        if alpha > 0:
            lw += alpha * np.log(tau)
        if beta > 0:
            lw += beta * np.log(eta)
    return lw


def normalize_log_weights(lw: np.ndarray) -> np.ndarray:
    """Softmax over log-weights; all-zero weights fall back to uniform"""
    top = lw.max()
    if not np.isfinite(top):
        return np.full(lw.shape[0], 1.0 / lw.shape[0])
    p = np.exp(lw - top)
    return p / p.sum()


def transition_probabilities(
    i: int,
    allowed: Sequence[int],
    pher: PheromoneField,
    heur: HeuristicField,
    alpha: float,
    beta: float,
) -> np.ndarray:
    """P_ij = tau_ij^alpha eta_ij^beta / sum_k tau_ik^alpha eta_ik^beta over `allowed`

    Evaluated in log space, so large exponents cannot overflow.
    """
    allowed = np.asarray(allowed, dtype=np.intp)
    if allowed.size == 0:
        raise ValueError(f"No allowed cities from city {i}: tour construction is broken")
    if np.any(allowed == i):
        raise ValueError(f"City {i} cannot be its own successor")
    return normalize_log_weights(
        log_weights(pher.tau[i, allowed], heur.eta[i, allowed], alpha, beta)
    )


def candidate_lists(instance: TspInstance, k: int) -> List[np.ndarray]:
    """The k nearest other cities of every city, closest first (lowest index on ties)"""
    if k < 1:
        raise ValueError(f"Candidate list size must be at least 1, got {k}")
    d = np.array(instance.distances)
    np.fill_diagonal(d, np.inf)
    k = min(k, instance.n - 1)
    nearest = np.argsort(d, axis=1, kind="stable")[:, :k]
    return [nearest[i].astype(np.intp) for i in range(instance.n)]
