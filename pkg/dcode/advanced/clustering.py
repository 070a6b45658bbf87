"""Clustered model estimation: seeded Lloyd iteration, weighted estimates and cluster-restricted candidate lists."""

# Standard
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

# Third Party
import numpy as np

# Local
from dcode.problems.core import TspInstance
from dcode.problems.rng import SeededRng
from dcode.utils import dcode_logger


@dataclass(frozen=True, eq=False)
class ClusterModel:
    k: int
    points: np.ndarray
    centroids: np.ndarray
    assignment: np.ndarray
    weights: np.ndarray
    inertia_history: Tuple[float, ...]
    converged: bool

    def __post_init__(self) -> None:
        if self.centroids.shape[0] != self.k:
            raise ValueError(f"Expected {self.k} centroids, got {self.centroids.shape[0]}")
        if self.assignment.shape[0] != self.points.shape[0]:
            raise ValueError("Every point needs exactly one cluster")
        if np.any(self.weights < 0):
            raise ValueError("Feature weights must be nonnegative")
        if self.weights.shape[0] != self.points.shape[1]:
            raise ValueError(
                f"Expected {self.points.shape[1]} feature weights, got {self.weights.shape[0]}"
            )

    @property
    def inertia(self) -> float:
        return self.inertia_history[-1]

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == cluster)


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return (diff**2).sum(axis=-1)


def _plus_plus_seeds(points: np.ndarray, k: int, rng: SeededRng) -> np.ndarray:
    """k-means++ seeding; points already chosen have zero weight and are never re-drawn"""
    n = points.shape[0]
    chosen = [rng.integers(0, n)]
    d2 = ((points - points[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            remaining = np.setdiff1d(np.arange(n), chosen)
            idx = int(remaining[rng.integers(0, remaining.shape[0])])
        else:
            idx = int(np.searchsorted(np.cumsum(d2), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
            if d2[idx] <= 0:
                idx = int(np.flatnonzero(d2 > 0)[-1])
        chosen.append(idx)
        d2 = np.minimum(d2, ((points - points[idx]) ** 2).sum(axis=1))
    return points[np.array(chosen)].copy()


def build_clusters(
    points: Sequence[Sequence[float]],
    k: int,
    max_iter: int,
    rng: SeededRng,
    weights: Optional[Sequence[float]] = None,
) -> ClusterModel:
    """Lloyd iteration from seeded initial centroids

    Stops at `max_iter` or when an assignment repeats. A cluster left empty after an update
    is re-seeded at the point farthest from its own centroid.
    """
    X = np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("points must be a non-empty sequence of feature vectors")
    n, d = X.shape
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= {n}, got {k}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    w = np.ones(d) if weights is None else np.asarray(weights, dtype=float)

    centroids = _plus_plus_seeds(X, k, rng)
    assignment = None
    history: List[float] = []
    converged = False
    for _ in range(max_iter):
        dist2 = _squared_distances(X, centroids)
        new_assignment = dist2.argmin(axis=1)
        history.append(float(dist2[np.arange(n), new_assignment].sum()))
        if assignment is not None and np.array_equal(new_assignment, assignment):
            converged = True
            break
        assignment = new_assignment

        counts = np.bincount(assignment, minlength=k)
        for c in np.flatnonzero(counts):
            centroids[c] = X[assignment == c].mean(axis=0)
        empty = np.flatnonzero(counts == 0)
        if empty.size:
            spread = ((X - centroids[assignment]) ** 2).sum(axis=1)
            for c in empty:
                far = int(np.argmax(spread))
                dcode_logger.debug("Cluster %s is empty, re-seeding at point %s", c, far)
                centroids[c] = X[far]
                spread[far] = -1.0

    return ClusterModel(
        k=k,
        points=X,
        centroids=centroids,
        assignment=assignment,
        weights=w,
        inertia_history=tuple(history),
        converged=converged,
    )


def cme_estimate(
    model: ClusterModel, cluster_i: int, point_j: int, weights: Optional[Sequence[float]] = None
) -> float:
    """Weighted feature sum of point j, which must belong to cluster i"""
    if not 0 <= point_j < model.points.shape[0]:
        raise ValueError(f"Point index {point_j} out of range")
    if model.assignment[point_j] != cluster_i:
        raise ValueError(
            f"Point {point_j} belongs to cluster {int(model.assignment[point_j])}, not {cluster_i}"
        )
    w = model.weights if weights is None else np.asarray(weights, dtype=float)
    return float(np.dot(w, model.points[point_j]))


def cluster_candidate_lists(instance: TspInstance, model: ClusterModel) -> List[np.ndarray]:
    """Same-cluster cities plus the single nearest city of every other cluster, closest first"""
    n = instance.n
    if model.points.shape[0] != n:
        raise ValueError(
            f"Cluster model covers {model.points.shape[0]} points, instance has {n} cities"
        )
    d = instance.distances
    members = [model.members(c) for c in range(model.k)]
    nearest_member = {
        c: m[np.argmin(d[:, m], axis=1)] for c, m in enumerate(members) if m.size > 0
    }

    lists = []
    for city in range(n):
        own = int(model.assignment[city])
        same = members[own][members[own] != city]
        bridges = [int(nearest[city]) for c, nearest in nearest_member.items() if c != own]
        cand = np.concatenate([same, np.array(bridges, dtype=np.intp)]).astype(np.intp)
        lists.append(cand[np.argsort(d[city, cand], kind="stable")])
    return lists


def clustered_candidates(
    instance: TspInstance, k: int, rng: SeededRng, max_iter: int = 100
) -> List[np.ndarray]:
    """Clusters the instance's city coordinates and turns the clusters into candidate lists"""
    if instance.coords is None:
        raise ValueError(f"Instance {instance.name} has no coordinates to cluster")
    model = build_clusters(instance.coords, min(k, instance.n), max_iter, rng)
    dcode_logger.debug(
        "%s: %s clusters, inertia %.1f after %s iterations",
        instance.name,
        model.k,
        model.inertia,
        len(model.inertia_history),
    )
    return cluster_candidate_lists(instance, model)


def default_cluster_count(n: int) -> int:
    return max(1, int(round(np.sqrt(n))))
