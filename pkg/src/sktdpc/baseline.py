"""Exact full-matrix reference implementations used as oracles.

Everything here scans the complete pairwise distance matrix: brute-force
k-NN, the classic cut-off-density peaks algorithm, and a full-matrix twin of
the sparse pipeline for equivalence testing.  Nothing is approximated.
"""

from __future__ import annotations

import time

import numpy as np

from . import core
from .dataset import Dataset
from .kdtree import NeighborSet


def full_matrix(d: Dataset) -> np.ndarray:
    """All n(n-1)/2 pairwise Euclidean distances as a symmetric matrix.

    Accumulates squared differences dimension by dimension so entries are
    bit-identical to a scalar left-to-right evaluation of the same formula.
    """
    pts = d.points
    n = pts.shape[0]
    sq = np.zeros((n, n))
    for h in range(pts.shape[1]):
        diff = pts[:, h, None] - pts[None, :, h]
        sq += diff * diff
    return np.sqrt(sq)


def brute_knn(m: np.ndarray, i: int, k: int) -> NeighborSet:
    """Exact k nearest neighbors of point i by scanning row i of the matrix.

    Same tie rule as the tree search: equal distances order by ascending
    point index.
    """
    n = m.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    order = np.argsort(m[i], kind="stable")
    picked = [int(j) for j in order if j != i][:k]
    return NeighborSet(i, tuple((j, float(m[i, j])) for j in picked))


def brute_knn_all(m: np.ndarray, k: int) -> list[NeighborSet]:
    return [brute_knn(m, i, k) for i in range(m.shape[0])]


def brute_separation(
    m: np.ndarray, density_order: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Relative separation by direct scans of the full matrix.

    The densest point takes its farthest distance; every other point takes
    the minimum distance to the points preceding it in the density order,
    ties by ascending index.
    """
    n = m.shape[0]
    separation = np.empty(n)
    nearest_denser = np.full(n, -1, dtype=np.int64)
    for r, i in enumerate(int(x) for x in density_order):
        if r == 0:
            separation[i] = float(m[i].max())
            continue
        preceding = density_order[:r]
        vals = m[i, preceding]
        best = vals.min()
        separation[i] = float(best)
        nearest_denser[i] = int(preceding[vals == best].min())
    return separation, nearest_denser


def cutoff_distance(m: np.ndarray, percent: float) -> float:
    """Cut-off distance at the given percentage of sorted pairwise distances.

    The usual 1-2 percent heuristic for the cut-off-density algorithm.
    """
    n = m.shape[0]
    if n < 2:
        raise ValueError("need at least two points")
    iu = np.triu_indices(n, k=1)
    flat = np.sort(m[iu])
    pos = int(np.ceil(percent / 100.0 * len(flat))) - 1
    return float(flat[min(max(pos, 0), len(flat) - 1)])


def dpc_original(
    d: Dataset, dc: float, n_centers: int, kernel: str = "cutoff"
) -> core.ClusteringResult:
    """Classic density-peaks clustering with a cut-off radius.

    ``cutoff`` density is the count of points within the radius; ``gaussian``
    is the smooth variant the widely circulated reference implementation
    uses, which behaves much better when counts tie heavily (chained shapes).
    Centers are the top ``n_centers`` decision values, standing in for the
    manual pick off the decision graph.
    """
    if dc <= 0:
        raise ValueError("dc must be positive")
    if not 1 <= n_centers <= d.n:
        raise ValueError(f"n_centers must be in [1, {d.n}]")
    t0 = time.perf_counter()
    m = full_matrix(d)
    if kernel == "cutoff":
        density = (m < dc).sum(axis=1).astype(np.float64) - 1.0  # drop self
    elif kernel == "gaussian":
        density = np.exp(-((m / dc) ** 2)).sum(axis=1) - 1.0  # drop self term
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    density_order = core._descending_order(density)
    separation, nearest_denser = brute_separation(m, density_order)
    decision, decision_order = core.decision_values(density, separation)
    centers = tuple(int(x) for x in decision_order[:n_centers])
    labels, flags = core.assign_labels(
        density_order, nearest_denser, centers, lambda i, j: float(m[i, j])
    )
    elapsed = time.perf_counter() - t0
    n_pairs = d.n * (d.n - 1) // 2
    profile = core.DpcProfile(
        density, density_order, separation, nearest_denser, decision, decision_order
    )
    return core.ClusteringResult(
        centers=centers,
        labels=labels,
        mutation_point=None,
        candidate_centers=centers,
        distance_evaluations=n_pairs,
        distance_ratio=1.0,
        timings={"total": elapsed},
        flags=flags,
        profile=profile,
        algorithm="dpc",
        dataset_name=d.name,
        params={"dc": dc, "n_centers": n_centers, "kernel": kernel},
    )


def sktdpc_reference(d: Dataset, k: int, n_centers: int | None = None) -> core.ClusteringResult:
    """Full-matrix twin of the sparse pipeline, for equivalence testing.

    k-NN, density and separation all come from direct scans of the complete
    distance matrix; the center detection and label assignment stages run on
    those quantities unchanged.
    """
    if not 1 <= k <= d.n - 1:
        raise ValueError(f"k must be in [1, {d.n - 1}], got {k}")
    if n_centers is not None and not 1 <= n_centers <= d.n:
        raise ValueError(f"n_centers must be in [1, {d.n}], got {n_centers}")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    m = full_matrix(d)
    timings["matrix"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    neighbor_sets = brute_knn_all(m, k)
    timings["knn"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    density, density_order = core.local_density(neighbor_sets)
    timings["density"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    separation, nearest_denser = brute_separation(m, density_order)
    timings["separation"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    decision, decision_order = core.decision_values(density, separation)
    m_p, flags_m = core.mutation_point(decision, decision_order)
    if n_centers is None:
        centers, candidates, flags_c = core.select_centers(
            density, separation, decision_order, m_p
        )
    else:
        centers = tuple(int(x) for x in decision_order[:n_centers])
        candidates = centers
        flags_c = ("fixed-center-count",)
    timings["centers"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    labels, flags_a = core.assign_labels(
        density_order, nearest_denser, centers, lambda i, j: float(m[i, j])
    )
    timings["assign"] = time.perf_counter() - t0
    timings["total"] = sum(timings.values())

    n_pairs = d.n * (d.n - 1) // 2
    profile = core.DpcProfile(
        density, density_order, separation, nearest_denser, decision, decision_order
    )
    return core.ClusteringResult(
        centers=centers,
        labels=labels,
        mutation_point=m_p,
        candidate_centers=candidates,
        distance_evaluations=n_pairs,
        distance_ratio=1.0,
        timings=timings,
        flags=flags_m + flags_c + flags_a,
        profile=profile,
        algorithm="sktdpc-reference",
        dataset_name=d.name,
        params={"k": k} if n_centers is None else {"k": k, "n_centers": n_centers},
    )
