"""The three evaluation metrics (solution quality, convergence, computational efficiency) and aggregates."""

# Standard
from typing import Dict, Optional, Sequence, Tuple

# Third Party
import numpy as np

# Local
from dcode.base.record import RunRecord

DEFAULT_CONVERGENCE_WINDOW = 25
DEFAULT_CONVERGENCE_EPSILON = 1e-4


def solution_quality(found_cost: float, optimal_cost: float) -> float:
    """SQ = 100 optimal / found for minimization, so SQ is in (0, 100]"""
    if optimal_cost <= 0:
        raise ValueError(f"optimal_cost must be positive, got {optimal_cost}")
    if found_cost < optimal_cost:
        raise ValueError(
            f"Found cost {found_cost} is below the optimum {optimal_cost}; check the best-known value"
        )
    return 100.0 * optimal_cost / found_cost


def _step_improvements(costs: Sequence[float]) -> np.ndarray:
    c = np.asarray(costs, dtype=float)
    prev, cur = c[:-1], c[1:]
    scale = np.abs(prev)
    delta = prev - cur
    return np.where(scale > 0, delta / np.where(scale > 0, scale, 1.0), delta)


def convergence_rate(record: RunRecord, W: int, eps: float) -> Optional[int]:
    """First (1-based) iteration i whose W following step improvements, into iterations
    i+1 .. i+W, are all below eps (relative)

    A window counts steps, not entries: it needs iteration i plus W more, so a record
    shorter than W + 1 iterations has no window and gives None, as does a record that never
    stabilizes.
    """
    if W < 1:
        raise ValueError(f"W must be at least 1, got {W}")
    costs = record.best_cost_per_iteration
    if len(costs) < W + 1:
        return None
    stable = _step_improvements(costs) < eps
    # stable[j] is the improvement into iteration j + 2
    for i in range(1, len(costs) - W + 1):
        if stable[i - 1 : i - 1 + W].all():
            return i
    return None


def computational_efficiency(record: RunRecord) -> Tuple[float, float]:
    """(wall seconds, evaluations per second)"""
    if record.wall_time <= 0:
        raise ValueError(f"wall_time must be positive, got {record.wall_time}")
    return record.wall_time, record.evaluations / record.wall_time


def relative_improvement(candidate: float, baseline: float) -> float:
    if baseline <= 0:
        raise ValueError(f"baseline must be positive, got {baseline}")
    return 100.0 * (candidate - baseline) / baseline


def aggregate(values: Sequence[Optional[float]]) -> Dict[str, Optional[float]]:
    """mean, median, population std, min and max over the values that are not None"""
    present = np.array([v for v in values if v is not None], dtype=float)
    stats: Dict[str, Optional[float]] = {"count": int(present.shape[0])}
    if present.shape[0] == 0:
        stats.update({"mean": None, "median": None, "std": None, "min": None, "max": None})
        return stats
    stats.update(
        {
            "mean": float(present.mean()),
            "median": float(np.median(present)),
            "std": float(present.std()),
            "min": float(present.min()),
            "max": float(present.max()),
        }
    )
    return stats
