"""Tree-ensemble objectives: evaluation, exact leaf-box minimization and schedule-driven search."""

# Standard
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import json
import math

# Third Party
import numpy as np

# Local
from dcode.efficiency.controller import EfficiencySchedule, efficiency
from dcode.problems.rng import SeededRng

MAX_COMBINATIONS = 10**6

Box = Dict[int, Tuple[float, float]]


class CombinationLimitError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    value: float


@dataclass(frozen=True)
class Split:
    """Internal node: x[feature] < threshold goes left, everything else right"""

    feature: int
    threshold: float
    left: "Node"
    right: "Node"


Node = Union[Leaf, Split]


def _node_from_dict(obj: Dict[str, Any], box: Box, path: str) -> Node:
    if not isinstance(obj, dict):
        raise ValueError(f"{path}: expected an object, got {type(obj).__name__}")
    if "leaf" in obj:
        if set(obj) != {"leaf"}:
            raise ValueError(f"{path}: leaf nodes carry only 'leaf'")
        value = float(obj["leaf"])
        if not math.isfinite(value):
            raise ValueError(f"{path}: leaf value must be finite")
        return Leaf(value)

    missing = {"feature", "threshold", "left", "right"} - set(obj)
    if missing:
        raise ValueError(f"{path}: split node missing {', '.join(sorted(missing))}")
    feature = obj["feature"]
    if not isinstance(feature, int) or isinstance(feature, bool) or feature < 0:
        raise ValueError(f"{path}: feature must be a nonnegative integer, got {feature!r}")
    threshold = float(obj["threshold"])
    if not math.isfinite(threshold):
        raise ValueError(f"{path}: threshold must be finite")
    lo, hi = box.get(feature, (-math.inf, math.inf))
    if not lo < threshold < hi:
        raise ValueError(
            f"{path}: threshold {threshold} on feature {feature} leaves an empty branch inside [{lo}, {hi})"
        )
    left = _node_from_dict(obj["left"], {**box, feature: (lo, threshold)}, path + ".left")
    right = _node_from_dict(obj["right"], {**box, feature: (threshold, hi)}, path + ".right")
    return Split(feature, threshold, left, right)


def _node_to_dict(node: Node) -> Dict[str, Any]:
    if isinstance(node, Leaf):
        return {"leaf": node.value}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


@dataclass(frozen=True)
class TreeEnsemble:
    trees: Tuple[Node, ...]

    @classmethod
    def from_list(cls, trees: List[Dict[str, Any]]) -> "TreeEnsemble":
        if not isinstance(trees, list):
            raise ValueError("A tree ensemble is a JSON list of trees")
        return cls(tuple(_node_from_dict(t, {}, f"trees[{i}]") for i, t in enumerate(trees)))

    @classmethod
    def load_json(cls, path: str) -> "TreeEnsemble":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_list(json.load(f))

    def to_list(self) -> List[Dict[str, Any]]:
        return [_node_to_dict(t) for t in self.trees]

    def thresholds(self) -> Dict[int, List[float]]:
        found: Dict[int, set] = {}
        stack = list(self.trees)
        while stack:
            node = stack.pop()
            if isinstance(node, Split):
                found.setdefault(node.feature, set()).add(node.threshold)
                stack.extend((node.left, node.right))
        return {f: sorted(v) for f, v in found.items()}


def tree_eval(node: Node, x: Sequence[float]) -> float:
    while isinstance(node, Split):
        if node.feature >= len(x):
            raise ValueError(
                f"Tree splits on feature {node.feature}, input has only {len(x)} features"
            )
        node = node.left if x[node.feature] < node.threshold else node.right
    return node.value


def ensemble_eval(ens: TreeEnsemble, x: Sequence[float]) -> float:
    """Sum of every tree's leaf value at x"""
    return float(sum(tree_eval(tree, x) for tree in ens.trees))


def leaf_boxes(node: Node, box: Optional[Box] = None) -> List[Tuple[float, Box]]:
    """Every leaf with its region, lo <= x[f] < hi per constrained feature"""
    box = {} if box is None else box
    if isinstance(node, Leaf):
        return [(node.value, box)]
    lo, hi = box.get(node.feature, (-math.inf, math.inf))
    return leaf_boxes(node.left, {**box, node.feature: (lo, min(hi, node.threshold))}) + leaf_boxes(
        node.right, {**box, node.feature: (max(lo, node.threshold), hi)}
    )


def _check_bounds(bounds: Sequence[Tuple[float, float]]) -> Tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(bounds, dtype=float)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] != 2:
        raise ValueError("bounds must be a non-empty sequence of (lo, hi) pairs")
    lo, hi = arr[:, 0].copy(), arr[:, 1].copy()
    if np.any(lo > hi) or not np.all(np.isfinite(arr)):
        raise ValueError(f"bounds describe an empty box: {bounds}")
    return lo, hi


def _joint_boxes(ens: TreeEnsemble, bounds: Sequence[Tuple[float, float]]):
    """Yields (value, lower corner) for every non-empty joint leaf box inside bounds

    Order is the lexicographic order of leaf combinations; empty partial intersections
    are pruned.
    """
    blo, bhi = _check_bounds(bounds)
    dim = blo.shape[0]
    per_tree = [leaf_boxes(t) for t in ens.trees]
    total = math.prod(len(leaves) for leaves in per_tree)
    if total > MAX_COMBINATIONS:
        raise CombinationLimitError(
            f"{total} leaf combinations exceed the limit of {MAX_COMBINATIONS}; shrink the ensemble"
        )

    def walk(depth: int, lo: np.ndarray, hi_open: np.ndarray, value: float):
        if depth == len(per_tree):
            yield value, lo
            return
        for leaf_value, box in per_tree[depth]:
            new_lo, new_hi = lo.copy(), hi_open.copy()
            for f, (low, high) in box.items():
                if f >= dim:
                    raise ValueError(f"Ensemble splits on feature {f}, bounds have {dim} features")
                new_lo[f] = max(new_lo[f], low)
                new_hi[f] = min(new_hi[f], high)
            if np.all(new_lo <= bhi) and np.all(new_lo < new_hi):
                yield from walk(depth + 1, new_lo, new_hi, value + leaf_value)

    yield from walk(0, blo, np.full(dim, math.inf), 0.0)


def joint_box_count(ens: TreeEnsemble, bounds: Sequence[Tuple[float, float]]) -> int:
    return sum(1 for _ in _joint_boxes(ens, bounds))


def teoo_brute_force(
    ens: TreeEnsemble, bounds: Sequence[Tuple[float, float]]
) -> Tuple[Tuple[float, ...], float]:
    """Exact minimum of the ensemble over the box, by leaf-box enumeration

    The returned point is the lower corner of the first minimizing joint box.
    """
    best = None
    for value, corner in _joint_boxes(ens, bounds):
        if best is None or value < best[1]:
            best = (tuple(float(v) for v in corner), float(value))
    return best


def teoo_minimize(
    ens: TreeEnsemble,
    bounds: Sequence[Tuple[float, float]],
    budget: int,
    rng: SeededRng,
    schedule: Optional[EfficiencySchedule] = None,
    radius: float = 0.5,
) -> Tuple[Tuple[float, ...], float]:
    """Random search steered by the efficiency schedule

    With probability 1 - E(t) a fresh point is drawn box-uniformly: a uniformly chosen
    threshold interval per feature, then a uniform point inside it. Otherwise the incumbent
    is perturbed by a Gaussian of per-feature scale radius * (1 - E(t)) * width, clipped
    to the box.
    """
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    lo, hi = _check_bounds(bounds)
    schedule = schedule if schedule is not None else EfficiencySchedule.for_budget(budget)
    gen = rng.gen

    thresholds = ens.thresholds()
    grids = []
    for f in range(lo.shape[0]):
        cuts = [c for c in thresholds.get(f, []) if lo[f] < c <= hi[f]]
        grids.append(np.array([lo[f]] + cuts + [hi[f]]))

    def box_uniform() -> np.ndarray:
        x = np.empty(lo.shape[0])
        for f, edges in enumerate(grids):
            j = int(gen.integers(0, edges.shape[0] - 1))
            a, b = edges[j], edges[j + 1]
            x[f] = a if a == b else gen.uniform(a, b)
        return x

    best_x = box_uniform()
    best_v = ensemble_eval(ens, best_x)
    for t in range(2, budget + 1):
        E = efficiency(schedule, t)
        if gen.random() < 1.0 - E:
            x = box_uniform()
        else:
            scale = radius * (1.0 - E) * (hi - lo)
            x = np.clip(best_x + scale * gen.standard_normal(lo.shape[0]), lo, hi)
        v = ensemble_eval(ens, x)
        if v < best_v:
            best_x, best_v = x, v
    return tuple(float(v) for v in best_x), float(best_v)
