"""SVG rendering of a map, its sample, and the fitted disk.

Layered drawing: class-filled region polygons, optional sample markers
(filled dots for positive weights, crosses for negative), and the disk
as a stroked circle. Deterministic output — the same inputs yield the
same bytes, so artifacts are diffable.
"""

from __future__ import annotations

from typing import Optional, Sequence

from chorodisk.geometry import Disk, bounding_box
from chorodisk.mapmodel import RegionMap

CLASS_FILL = {1: "#4a90d9", 2: "#d9d4c5"}


def _fmt(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".")


def _ring_path(ring) -> str:
    pts = " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in ring)
    return f"M {pts} Z"


def render_svg(
    region_map: RegionMap,
    disk: Optional[Disk],
    sample=None,
    weights: Optional[Sequence[float]] = None,
) -> str:
    """Render the map (and optionally sample markers and the fitted disk)
    as an SVG document string.

    The viewBox is the map bbox plus a 2% margin; y is flipped so north
    stays up. A missing or empty disk is annotated as a comment instead
    of a circle.
    """
    parts = []
    for region in region_map.regions:
        parts.extend((p, region.class_id) for p in region.shape)
    x0, y0, x1, y1 = bounding_box([p for p, _ in parts])
    margin = 0.02 * max(x1 - x0, y1 - y0)
    vb = (x0 - margin, y0 - margin, (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin)
    marker_r = 0.006 * max(vb[2], vb[3])
    stroke = 0.002 * max(vb[2], vb[3])

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(vb[0])} {_fmt(-(y1 + margin))} '
        f'{_fmt(vb[2])} {_fmt(vb[3])}" width="800" height="{_fmt(800 * vb[3] / vb[2])}">',
        f'<g transform="scale(1,-1)" stroke-width="{_fmt(stroke)}">',
    ]
    lines.append('<g class="regions" stroke="#555">')
    for poly, class_id in parts:
        d = " ".join(_ring_path(r) for r in poly.rings())
        lines.append(f'<path d="{d}" fill="{CLASS_FILL[class_id]}" fill-rule="evenodd"/>')
    lines.append("</g>")

    if sample is not None:
        pts = list(sample.points) if hasattr(sample, "points") else list(sample)
        ws = list(weights) if weights is not None else [1.0] * len(pts)
        lines.append('<g class="sample">')
        for (x, y), w in zip(pts, ws):
            if w > 0:
                lines.append(
                    f'<circle class="sample-pos" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                    f'r="{_fmt(marker_r)}" fill="#1f4d8f" stroke="none"/>'
                )
            else:
                a = marker_r
                lines.append(
                    f'<path class="sample-neg" d="M {_fmt(x - a)} {_fmt(y - a)} '
                    f"L {_fmt(x + a)} {_fmt(y + a)} M {_fmt(x - a)} {_fmt(y + a)} "
                    f'L {_fmt(x + a)} {_fmt(y - a)}" stroke="#8a8a8a"/>'
                )
        lines.append("</g>")

    if disk is not None and disk.radius > 0.0:
        lines.append(
            f'<circle class="fit-disk" cx="{_fmt(disk.center.x)}" cy="{_fmt(disk.center.y)}" '
            f'r="{_fmt(disk.radius)}" fill="none" stroke="#c0392b" '
            f'stroke-width="{_fmt(2.5 * stroke)}"/>'
        )
    else:
        lines.append("<!-- no disk: degenerate or empty result -->")

    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
