"""SVG rendering of a placement plan over its digital map.

Output is plain SVG 1.1 text with no external references, stable byte
for byte for a given plan and map: coordinates are always formatted
with two decimals and the palette is fixed.
"""

from __future__ import annotations

import math

from .geomap import DigitalMap, convex_hull
from .planner import PlanResult

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)

_MAP_W = 600.0
_MAP_H = 560.0
_MARGIN = 20.0
_LEGEND_X = _MAP_W + 2 * _MARGIN
_WIDTH = 840
_LEGEND_LINE = 18.0


def _fmt(value: float) -> str:
    return f"{value:.2f}"


class _Projector:
    """Map metres to canvas pixels, flipping y so north is up."""

    def __init__(self, dmap: DigitalMap):
        xs = [n.x_m for n in dmap.nodes]
        ys = [n.y_m for n in dmap.nodes]
        min_x, max_x = min(xs), max(xs)
        min_y, max_y = min(ys), max(ys)
        span = max(max_x - min_x, max_y - min_y)
        if span <= 0.0:
            span = 1.0
        pad = 0.05 * span
        self._min_x = min_x - pad
        self._min_y = min_y - pad
        self._scale = min(_MAP_W, _MAP_H) / (span + 2 * pad)

    def __call__(self, x_m: float, y_m: float) -> tuple[float, float]:
        px = _MARGIN + (x_m - self._min_x) * self._scale
        py = _MARGIN + _MAP_H - (y_m - self._min_y) * self._scale
        return px, py


def render_svg(result: PlanResult, dmap: DigitalMap) -> str:
    """Draw clusters (hulls), nodes (load-scaled dots), and medoids."""
    by_id = {n.id: n for n in dmap.nodes}
    for report in result.clusters:
        for nid in report.member_ids:
            if nid not in by_id:
                raise ValueError(f"plan references node {nid} missing from the map")

    project = _Projector(dmap)
    max_load = max((n.subscribers for n in dmap.nodes), default=0.0)
    height = max(
        _MAP_H + 2 * _MARGIN,
        2 * _MARGIN + _LEGEND_LINE * (len(result.clusters) + 2),
    )

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_WIDTH} {_fmt(height)}">'
    )
    parts.append(
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_fmt(height)}" fill="#ffffff"/>'
    )

    colors = {
        report.medoid_id: PALETTE[i % len(PALETTE)]
        for i, report in enumerate(result.clusters)
    }

    for report in result.clusters:
        color = colors[report.medoid_id]
        points = [(by_id[nid].x_m, by_id[nid].y_m) for nid in report.member_ids]
        hull = convex_hull(points)
        if len(hull) >= 3:
            coords = " ".join(
                f"{_fmt(px)},{_fmt(py)}" for px, py in (project(x, y) for x, y in hull)
            )
            parts.append(
                f'<polygon class="hull" points="{coords}" fill="{color}" '
                f'fill-opacity="0.12" stroke="{color}" stroke-width="1.5"/>'
            )
        elif len(hull) == 2:
            (x1, y1), (x2, y2) = (project(*hull[0]), project(*hull[1]))
            parts.append(
                f'<line class="hull" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{color}" '
                f'stroke-width="1.5"/>'
            )

    for report in result.clusters:
        color = colors[report.medoid_id]
        for nid in report.member_ids:
            node = by_id[nid]
            px, py = project(node.x_m, node.y_m)
            if max_load > 0:
                r = 2.0 + 6.0 * math.sqrt(node.subscribers / max_load)
            else:
                r = 2.0
            parts.append(
                f'<circle class="node" cx="{_fmt(px)}" cy="{_fmt(py)}" '
                f'r="{_fmt(r)}" fill="{color}" fill-opacity="0.8"/>'
            )

    for report in result.clusters:
        color = colors[report.medoid_id]
        node = by_id[report.medoid_id]
        px, py = project(node.x_m, node.y_m)
        s = 7.0
        parts.append(
            f'<path class="medoid" d="M {_fmt(px)} {_fmt(py - s)} '
            f'L {_fmt(px + s)} {_fmt(py)} L {_fmt(px)} {_fmt(py + s)} '
            f'L {_fmt(px - s)} {_fmt(py)} Z" fill="{color}" '
            f'stroke="#000000" stroke-width="1.2"/>'
        )

    ly = _MARGIN + _LEGEND_LINE
    status = "feasible" if result.feasible else "infeasible"
    parts.append(
        f'<text class="legend" x="{_fmt(_LEGEND_X)}" y="{_fmt(ly)}" '
        f'font-family="sans-serif" font-size="13" font-weight="bold">'
        f"k = {result.final_k} ({status})</text>"
    )
    for report in result.clusters:
        ly += _LEGEND_LINE
        color = colors[report.medoid_id]
        parts.append(
            f'<rect class="legend" x="{_fmt(_LEGEND_X)}" y="{_fmt(ly - 9.0)}" '
            f'width="10" height="10" fill="{color}"/>'
        )
        parts.append(
            f'<text class="legend" x="{_fmt(_LEGEND_X + 16.0)}" y="{_fmt(ly)}" '
            f'font-family="sans-serif" font-size="12">'
            f"bs {report.medoid_id}: cov {report.cells_coverage_ratio:.2f}, "
            f"cap {report.cells_capacity_ratio:.2f}</text>"
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
