"""The sparse density-peaks clustering pipeline.

Stages: k-NN local density, sparse relative-separation search, decision
values, mutation-point center detection with pseudo-center filtering, and
label propagation along nearest-denser-point links.  Every stage is a pure
function; :func:`run_sktdpc` chains them and collects instrumentation.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .dataset import Dataset
from .kdtree import NeighborSet, build, knn_all
from .sparse import SparseDistanceMatrix


@dataclass(frozen=True)
class DpcProfile:
    """Per-point quantities the center search runs on.

    ``density_order`` and ``decision_order`` sort descending with ascending
    index as tie break.  ``nearest_denser[i]`` is -1 for the densest point.
    """

    density: np.ndarray
    density_order: np.ndarray
    separation: np.ndarray
    nearest_denser: np.ndarray
    decision: np.ndarray
    decision_order: np.ndarray

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            getattr(self, name).setflags(write=False)


@dataclass(frozen=True)
class ClusteringResult:
    """Centers, per-point labels and instrumentation for one clustering run."""

    centers: tuple[int, ...]
    labels: np.ndarray
    mutation_point: int | None
    candidate_centers: tuple[int, ...]
    distance_evaluations: int
    distance_ratio: float
    timings: dict[str, float]
    flags: tuple[str, ...]
    profile: DpcProfile
    algorithm: str = "sktdpc"
    dataset_name: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.labels.setflags(write=False)

    @property
    def n_clusters(self) -> int:
        return len(self.centers)


def _descending_order(values: np.ndarray) -> np.ndarray:
    """Indices sorting values descending, equal values by ascending index."""
    return np.lexsort((np.arange(len(values)), -values))


def local_density(neighbor_sets: Sequence[NeighborSet]) -> tuple[np.ndarray, np.ndarray]:
    """Local density of every point: reciprocal of its summed k-NN distances.

    A point whose k nearest neighbors are all coincident with it gets an
    infinite-density sentinel and sorts first.
    """
    n = len(neighbor_sets)
    density = np.empty(n)
    for ns in neighbor_sets:
        total = 0.0
        for _, d in ns.neighbors:
            total += d
        density[ns.owner] = 1.0 / total if total > 0.0 else np.inf
    return density, _descending_order(density)


def relative_separation(
    density: np.ndarray,
    density_order: np.ndarray,
    neighbor_sets: Sequence[NeighborSet],
    cache: SparseDistanceMatrix,
) -> tuple[np.ndarray, np.ndarray]:
    """Distance from each point to its nearest denser point, found sparsely.

    For the densest point the separation is its distance to the farthest
    point.  For any other point, if some k-nearest neighbor is denser, the
    answer is already cached and no new distance is computed; otherwise the
    denser points are scanned, reading cached entries where present and
    computing (and counting) the rest.  Ties break on ascending index.
    """
    n = len(density)
    rank = np.empty(n, dtype=np.int64)
    rank[density_order] = np.arange(n)
    separation = np.empty(n)
    nearest_denser = np.full(n, -1, dtype=np.int64)

    for r, i in enumerate(int(x) for x in density_order):
        if r == 0:
            far = 0.0
            for j in range(n):
                if j != i:
                    d = cache.distance(i, j)
                    if d > far:
                        far = d
            separation[i] = far
            continue
        hit = False
        for j, d in neighbor_sets[i].neighbors:
            if rank[j] < r:
                separation[i] = d
                nearest_denser[i] = j
                hit = True
                break
        if not hit:
            best_d = math.inf
            best_j = -1
            for j in (int(x) for x in density_order[:r]):
                d = cache.distance(i, j)
                if d < best_d or (d == best_d and j < best_j):
                    best_d = d
                    best_j = j
            separation[i] = best_d
            nearest_denser[i] = best_j
    return separation, nearest_denser


def decision_values(density: np.ndarray, separation: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Decision value of each point: density times separation.

    Infinite-density sentinels propagate to an infinite decision value and
    sort first.
    """
    with np.errstate(invalid="ignore"):
        decision = density * separation
    infinite = np.isinf(density)
    if infinite.any():
        decision = np.where(infinite, np.inf, decision)
    return decision, _descending_order(decision)


def mutation_point(
    decision: np.ndarray, decision_order: np.ndarray
) -> tuple[int, tuple[str, ...]]:
    """Rank separating center candidates from the rest of the decision curve.

    Scored second-order differences of the descending decision values over
    ranks [2, floor(sqrt(n))]; the winner is the largest rank attaining the
    maximum score.  Degenerate windows fall back deterministically and are
    flagged.
    """
    n = len(decision)
    m = math.isqrt(n)
    if m - 2 < 2:
        return 2, ("mutation-window-too-small",)
    ranked = decision[decision_order]

    def gs(rank: int) -> float:
        return float(ranked[rank - 1])

    window = ranked[1:m]
    lo, hi = float(window.min()), float(window.max())
    if hi == lo:
        return m - 2, ("flat-decision-window",)
    spread = hi - lo

    def mu(i: int) -> float:
        return gs(i) - gs(i + 1)

    best_score = -math.inf
    best_rank = 2
    for i in range(2, m - 1):
        xi = mu(i) - mu(i + 1)
        score = ((i + 1) / i) ** 2 * xi / spread
        if not math.isfinite(score):
            continue
        if score >= best_score:  # ties resolve to the largest rank
            best_score = score
            best_rank = i
    if best_score == -math.inf:
        return m - 2, ("non-finite-decision-window",)
    return best_rank, ()


def select_centers(
    density: np.ndarray,
    separation: np.ndarray,
    decision_order: np.ndarray,
    m_p: int,
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[str, ...]]:
    """Filter candidate centers (top decision ranks) against density and
    separation means taken over the top floor(sqrt(n)) decision ranks.

    Candidates must exceed both means; an emptied set falls back to the
    top-ranked point.
    """
    n = len(density)
    candidates = tuple(int(x) for x in decision_order[: min(m_p, n)])
    top = decision_order[: min(math.isqrt(n), n)]
    density_mean = float(density[top].mean())
    separation_mean = float(separation[top].mean())
    centers = tuple(
        c
        for c in candidates
        if density[c] > density_mean and separation[c] > separation_mean
    )
    if centers:
        return centers, candidates, ()
    return (candidates[0],), candidates, ("center-filter-fallback",)


def assign_labels(
    density_order: np.ndarray,
    nearest_denser: np.ndarray,
    centers: Sequence[int],
    distance_fn: Callable[[int, int], float],
) -> tuple[np.ndarray, tuple[str, ...]]:
    """Propagate cluster ids from centers along nearest-denser links.

    A single pass in descending-density order suffices because every point's
    nearest denser point precedes it.  If the densest point is not itself a
    center it joins the nearest center's cluster (flagged).
    """
    n = len(density_order)
    labels = np.full(n, -1, dtype=np.int64)
    for cid, c in enumerate(centers):
        labels[c] = cid
    flags: tuple[str, ...] = ()
    for i in (int(x) for x in density_order):
        if labels[i] >= 0:
            continue
        j = int(nearest_denser[i])
        if j < 0:
            best = min((distance_fn(i, c), cid) for cid, c in enumerate(centers))
            labels[i] = best[1]
            flags = ("densest-point-not-center",)
        else:
            labels[i] = labels[j]
    return labels, flags


def run_sktdpc(d: Dataset, k: int, n_centers: int | None = None) -> ClusteringResult:
    """Cluster a dataset with the tree-accelerated sparse pipeline.

    With ``n_centers=None`` the center count is detected adaptively from the
    decision curve (mutation point plus pseudo-center filter).  Passing an
    explicit ``n_centers`` takes the top that many decision-value ranks as
    centers instead, the usual benchmark convention when the class count is
    known; the detected mutation point is still reported.

    Deterministic for a fixed input; per-phase wall times and the distance
    evaluation counter are reported alongside the labels.
    """
    if not 1 <= k <= d.n - 1:
        raise ValueError(f"k must be in [1, {d.n - 1}], got {k}")
    if n_centers is not None and not 1 <= n_centers <= d.n:
        raise ValueError(f"n_centers must be in [1, {d.n}], got {n_centers}")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    tree = build(d)
    timings["build"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    neighbor_sets, cache = knn_all(tree, k)
    timings["knn"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    density, density_order = local_density(neighbor_sets)
    timings["density"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    separation, nearest_denser = relative_separation(
        density, density_order, neighbor_sets, cache
    )
    timings["separation"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    decision, decision_order = decision_values(density, separation)
    m_p, flags_m = mutation_point(decision, decision_order)
    if n_centers is None:
        centers, candidates, flags_c = select_centers(
            density, separation, decision_order, m_p
        )
    else:
        centers = tuple(int(x) for x in decision_order[:n_centers])
        candidates = centers
        flags_c = ("fixed-center-count",)
    timings["centers"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    labels, flags_a = assign_labels(density_order, nearest_denser, centers, cache.distance)
    timings["assign"] = time.perf_counter() - t0
    timings["total"] = sum(timings.values())

    flags = flags_m + flags_c + flags_a
    if np.isinf(density).any():
        flags = flags + ("infinite-density-sentinel",)
    profile = DpcProfile(
        density, density_order, separation, nearest_denser, decision, decision_order
    )
    return ClusteringResult(
        centers=centers,
        labels=labels,
        mutation_point=m_p,
        candidate_centers=candidates,
        distance_evaluations=cache.evaluations,
        distance_ratio=cache.ratio(),
        timings=timings,
        flags=flags,
        profile=profile,
        algorithm="sktdpc",
        dataset_name=d.name,
        params={"k": k} if n_centers is None else {"k": k, "n_centers": n_centers},
    )
