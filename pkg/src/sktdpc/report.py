"""Flat key-value run reports.

One ``[run]`` section per clustering run with everything deterministic, and
a ``[timings]`` section holding the wall-clock numbers, so golden comparisons
can mask timing noise by dropping that section.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import metrics as metrics_mod
from .core import ClusteringResult


@dataclass(frozen=True)
class RunReport:
    dataset: str
    algorithm: str
    params: dict
    n: int
    dim: int
    normalize: str
    centers: tuple[int, ...]
    mutation_point: int | None
    candidates: int
    distance_evaluations: int
    distance_ratio: float
    flags: tuple[str, ...]
    metrics: dict[str, float] | None
    timings: dict[str, float]
    repeat_times: tuple[float, ...] = ()
    error: str | None = None

    @property
    def repeats(self) -> int:
        return max(1, len(self.repeat_times))


def from_result(
    result: ClusteringResult,
    truth: np.ndarray | None,
    normalize: str,
    n: int,
    dim: int,
    repeat_times: tuple[float, ...] = (),
) -> RunReport:
    scores = None
    if truth is not None:
        scores = metrics_mod.score_all(truth, result.labels)
    return RunReport(
        dataset=result.dataset_name,
        algorithm=result.algorithm,
        params=dict(result.params),
        n=n,
        dim=dim,
        normalize=normalize,
        centers=result.centers,
        mutation_point=result.mutation_point,
        candidates=len(result.candidate_centers),
        distance_evaluations=result.distance_evaluations,
        distance_ratio=result.distance_ratio,
        flags=result.flags,
        metrics=scores,
        timings=dict(result.timings),
    )


def to_text(report: RunReport) -> str:
    lines = ["[run]"]
    put = lines.append
    put(f"dataset = {report.dataset}")
    put(f"algorithm = {report.algorithm}")
    for key in sorted(report.params):
        put(f"param_{key} = {report.params[key]}")
    put(f"n = {report.n}")
    put(f"features = {report.dim}")
    put(f"normalize = {report.normalize}")
    if report.error is not None:
        put(f"error = {report.error}")
        return "\n".join(lines) + "\n"
    put(f"centers = {len(report.centers)}")
    put(f"center_indices = {' '.join(str(c) for c in report.centers)}")
    put(f"mutation_point = {report.mutation_point if report.mutation_point is not None else '-'}")
    put(f"candidates = {report.candidates}")
    put(f"distance_evaluations = {report.distance_evaluations}")
    put(f"distance_ratio = {report.distance_ratio:.6f}")
    put(f"flags = {' '.join(report.flags)}")
    if report.metrics is not None:
        for key in ("acc", "ami", "ari", "nmi", "fmi"):
            put(f"{key} = {report.metrics[key]:.6f}")
    put("[timings]")
    put(f"repeats = {report.repeats}")
    for key in sorted(report.timings):
        put(f"time_{key} = {report.timings[key]:.6f}")
    if report.repeat_times:
        put("repeat_times = " + " ".join(f"{t:.6f}" for t in report.repeat_times))
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> list[dict[str, dict[str, str]]]:
    """Parse report text back into per-run section dictionaries."""
    runs: list[dict[str, dict[str, str]]] = []
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line == "[run]":
            runs.append({"run": {}, "timings": {}})
            section = "run"
            continue
        if line == "[timings]":
            section = "timings"
            continue
        if "=" in line and runs and section:
            key, _, value = line.partition("=")
            runs[-1][section][key.strip()] = value.strip()
    return runs


def strip_timings(text: str) -> str:
    """Report text with every [timings] section removed (golden comparisons)."""
    out = []
    in_timings = False
    for line in text.splitlines():
        if line.strip() == "[timings]":
            in_timings = True
            continue
        if line.strip() == "[run]":
            in_timings = False
        if not in_timings:
            out.append(line)
    return "\n".join(out) + "\n"
