# Standard
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

# Third Party
import numpy as np

MIN_CITIES = 3
OBJECTIVES = ("sphere", "rosenbrock", "rastrigin")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TspInstance:
    """A symmetric TSP graph, given by planar coordinates or an explicit distance matrix"""

    name: str
    distances: np.ndarray
    coords: Optional[np.ndarray] = None
    best_known: Optional[float] = None

    def __post_init__(self) -> None:
        d = _frozen(self.distances)
        object.__setattr__(self, "distances", d)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"Instance {self.name}: distance matrix must be square, got {d.shape}")
        n = d.shape[0]
        if n < MIN_CITIES:
            raise ValueError(f"Instance {self.name}: at least {MIN_CITIES} cities required, got {n}")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValueError(f"Instance {self.name}: distances must be finite and nonnegative")
        if np.any(np.diag(d) != 0):
            raise ValueError(f"Instance {self.name}: distance matrix must have a zero diagonal")
        if not np.array_equal(d, d.T):
            raise ValueError(f"Instance {self.name}: distance matrix must be symmetric")
        if self.coords is not None:
            coords = _frozen(self.coords)
            if coords.shape != (n, 2):
                raise ValueError(
                    f"Instance {self.name}: expected {n} coordinate pairs, got shape {coords.shape}"
                )
            object.__setattr__(self, "coords", coords)
        if self.best_known is not None and self.best_known <= 0:
            raise ValueError(f"Instance {self.name}: best_known must be positive")

    @property
    def n(self) -> int:
        return self.distances.shape[0]

    @classmethod
    def from_coordinates(
        cls,
        name: str,
        coords: Sequence[Sequence[float]],
        round_distances: bool = True,
        best_known: Optional[float] = None,
    ) -> "TspInstance":
        """Builds an instance from planar points; rounding follows the TSPLIB EUC_2D rule"""
        coords = np.asarray(coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise ValueError(f"Instance {name}: coordinates must be (x, y) pairs")
        diff = coords[:, None, :] - coords[None, :, :]
        d = np.sqrt((diff**2).sum(axis=-1))
        if round_distances:
            d = np.floor(d + 0.5)
        # exact symmetry regardless of floating-point evaluation order
        d = np.triu(d, 1)
        d = d + d.T
        return cls(name=name, distances=d, coords=coords, best_known=best_known)

    @classmethod
    def from_matrix(
        cls, name: str, matrix: Sequence[Sequence[float]], best_known: Optional[float] = None
    ) -> "TspInstance":
        return cls(name=name, distances=np.asarray(matrix, dtype=float), best_known=best_known)

    def with_best_known(self, best_known: Optional[float]) -> "TspInstance":
        return TspInstance(self.name, self.distances, self.coords, best_known)


@dataclass(frozen=True)
class Tour:
    order: Tuple[int, ...]
    cost: float


def check_permutation(n: int, order: Sequence[int]) -> np.ndarray:
    arr = np.asarray(order)
    if arr.ndim != 1 or arr.shape[0] != n or not np.array_equal(np.sort(arr), np.arange(n)):
        raise ValueError(f"Tour must be a permutation of 0..{n - 1}, got {list(order)}")
    return arr.astype(np.intp)


def tour_cost(instance: TspInstance, order: Sequence[int]) -> float:
    """Cycle length including the closing edge back to the start"""
    arr = check_permutation(instance.n, order)
    return float(instance.distances[arr, np.roll(arr, -1)].sum())


def make_tour(instance: TspInstance, order: Sequence[int]) -> Tour:
    return Tour(order=tuple(int(c) for c in order), cost=tour_cost(instance, order))


def nearest_neighbor_tour(instance: TspInstance, start: int = 0) -> Tour:
    """Greedy tour: always move to the closest unvisited city (lowest index on ties)"""
    d = instance.distances
    visited = np.zeros(instance.n, dtype=bool)
    order = [start]
    visited[start] = True
    current = start
    for _ in range(instance.n - 1):
        row = np.where(visited, np.inf, d[current])
        current = int(np.argmin(row))
        visited[current] = True
        order.append(current)
    return make_tour(instance, order)


@dataclass(frozen=True)
class ContinuousProblem:
    """Box-bounded continuous minimization over one of the analytic benchmark functions"""

    objective_id: str
    dim: int
    bounds: Tuple[Tuple[float, float], ...]
    known_minimum: Tuple[Tuple[float, ...], float] = field(default=None)
    start: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        if self.objective_id not in OBJECTIVES:
            raise ValueError(
                f"Unknown objective '{self.objective_id}', valid objectives: {', '.join(OBJECTIVES)}"
            )
        if self.dim < 1:
            raise ValueError(f"dim must be at least 1, got {self.dim}")
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) != self.dim:
            raise ValueError(f"Expected {self.dim} bounds, got {len(bounds)}")
        if any(not lo < hi for lo, hi in bounds):
            raise ValueError(f"Every bound needs lo < hi, got {bounds}")
        object.__setattr__(self, "bounds", bounds)
        if self.known_minimum is not None:
            loc, _ = self.known_minimum
            if not self.contains(loc):
                raise ValueError("known_minimum must lie inside bounds")
        if self.start is not None:
            if len(self.start) != self.dim or not self.contains(self.start):
                raise ValueError(f"start point {self.start} must lie inside bounds")

    @property
    def lower(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.bounds])

    @property
    def upper(self) -> np.ndarray:
        return np.array([hi for _, hi in self.bounds])

    def contains(self, x: Sequence[float]) -> bool:
        return len(x) == self.dim and all(lo <= v <= hi for v, (lo, hi) in zip(x, self.bounds))
