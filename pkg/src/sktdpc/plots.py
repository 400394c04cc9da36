"""Self-contained SVG renderings of clustering diagnostics.

Pure-text SVG writers with no external assets: a labeled 2-D scatter, the
density-vs-separation decision graph, and the sorted decision-value series
with the mutation point marked.  Output is deterministic for fixed input.
"""

from __future__ import annotations

import numpy as np

PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
    "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7",
    "#dbdb8d", "#9edae5",
]

WIDTH, HEIGHT, MARGIN = 640, 480, 50


def _axis_map(lo: float, hi: float, pix_lo: float, pix_hi: float):
    span = hi - lo
    if span == 0.0:
        span = 1.0
    scale = (pix_hi - pix_lo) / span

    def to_pix(v: float) -> float:
        return pix_lo + (v - lo) * scale

    return to_pix


def _frame(title: str, xlabel: str, ylabel: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#333" stroke-width="1"/>',
        f'<text x="{WIDTH / 2:.1f}" y="{MARGIN - 15}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
        f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="15" y="{HEIGHT / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 15 {HEIGHT / 2:.1f})">{ylabel}</text>',
    ]


def _ticks(parts: list[str], lo: float, hi: float, axis: str):
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        v = lo + frac * (hi - lo)
        if axis == "x":
            px = MARGIN + frac * (WIDTH - 2 * MARGIN)
            parts.append(
                f'<text x="{px:.1f}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="10">{v:.3g}</text>'
            )
        else:
            py = HEIGHT - MARGIN - frac * (HEIGHT - 2 * MARGIN)
            parts.append(
                f'<text x="{MARGIN - 6}" y="{py:.1f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10">{v:.3g}</text>'
            )


def scatter_svg(
    points: np.ndarray,
    labels: np.ndarray | None = None,
    centers: tuple[int, ...] = (),
    title: str = "clustering",
) -> str:
    """2-D scatter colored by label, centers ringed in black."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError("scatter plots need 2-D points")
    xlo, ylo = points.min(axis=0)
    xhi, yhi = points.max(axis=0)
    to_x = _axis_map(xlo, xhi, MARGIN, WIDTH - MARGIN)
    to_y = _axis_map(ylo, yhi, HEIGHT - MARGIN, MARGIN)
    parts = _frame(title, "x", "y")
    _ticks(parts, xlo, xhi, "x")
    _ticks(parts, ylo, yhi, "y")
    for i in range(points.shape[0]):
        color = PALETTE[int(labels[i]) % len(PALETTE)] if labels is not None else PALETTE[0]
        parts.append(
            f'<circle cx="{to_x(points[i, 0]):.2f}" cy="{to_y(points[i, 1]):.2f}" '
            f'r="3" fill="{color}" fill-opacity="0.75"/>'
        )
    for c in centers:
        parts.append(
            f'<circle cx="{to_x(points[c, 0]):.2f}" cy="{to_y(points[c, 1]):.2f}" '
            f'r="7" fill="none" stroke="black" stroke-width="2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def decision_graph_svg(
    density: np.ndarray,
    separation: np.ndarray,
    centers: tuple[int, ...] = (),
    title: str = "decision graph",
) -> str:
    """Density vs separation scatter with selected centers highlighted."""
    density = np.asarray(density, dtype=float)
    separation = np.asarray(separation, dtype=float)
    finite = np.isfinite(density)
    xhi = float(density[finite].max()) if finite.any() else 1.0
    xlo = 0.0
    ylo, yhi = 0.0, float(separation.max())
    to_x = _axis_map(xlo, xhi, MARGIN, WIDTH - MARGIN)
    to_y = _axis_map(ylo, yhi, HEIGHT - MARGIN, MARGIN)
    parts = _frame(title, "local density", "relative separation")
    _ticks(parts, xlo, xhi, "x")
    _ticks(parts, ylo, yhi, "y")
    center_set = set(centers)
    for i in range(len(density)):
        x = xhi if not np.isfinite(density[i]) else density[i]
        if i in center_set:
            continue
        parts.append(
            f'<circle cx="{to_x(x):.2f}" cy="{to_y(separation[i]):.2f}" '
            f'r="3" fill="#1f77b4" fill-opacity="0.6"/>'
        )
    for rank, c in enumerate(centers):
        x = xhi if not np.isfinite(density[c]) else density[c]
        parts.append(
            f'<circle cx="{to_x(x):.2f}" cy="{to_y(separation[c]):.2f}" '
            f'r="6" fill="{PALETTE[rank % len(PALETTE)]}" stroke="black" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def decision_series_svg(
    decision_sorted: np.ndarray,
    mutation_point: int | None,
    n_centers: int,
    title: str = "sorted decision values",
) -> str:
    """Descending decision values by rank; mutation point and centers marked."""
    values = np.asarray(decision_sorted, dtype=float)
    finite = values[np.isfinite(values)]
    vhi = float(finite.max()) if len(finite) else 1.0
    n = len(values)
    to_x = _axis_map(1, max(n, 2), MARGIN, WIDTH - MARGIN)
    to_y = _axis_map(0.0, vhi, HEIGHT - MARGIN, MARGIN)
    parts = _frame(title, "rank", "decision value")
    _ticks(parts, 1, max(n, 2), "x")
    _ticks(parts, 0.0, vhi, "y")
    if mutation_point is not None and 1 <= mutation_point <= n:
        mx = to_x(mutation_point)
        parts.append(
            f'<line x1="{mx:.2f}" y1="{MARGIN}" x2="{mx:.2f}" y2="{HEIGHT - MARGIN}" '
            f'stroke="#d62728" stroke-width="1" stroke-dasharray="5,4"/>'
        )
        parts.append(
            f'<text x="{mx + 4:.2f}" y="{MARGIN + 14}" font-family="sans-serif" '
            f'font-size="11" fill="#d62728">mutation point = {mutation_point}</text>'
        )
    for rank, v in enumerate(values, start=1):
        y = vhi if not np.isfinite(v) else v
        if rank <= n_centers:
            parts.append(
                f'<circle cx="{to_x(rank):.2f}" cy="{to_y(y):.2f}" r="5" '
                f'fill="{PALETTE[(rank - 1) % len(PALETTE)]}" stroke="black" stroke-width="1"/>'
            )
        else:
            parts.append(
                f'<circle cx="{to_x(rank):.2f}" cy="{to_y(y):.2f}" r="2.5" fill="#555"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)
