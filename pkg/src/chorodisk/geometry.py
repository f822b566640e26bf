"""Planar geometry kernel.

Polygons with holes, areas and centroids, closed-containment tests,
triangulation, exact disk-polygon intersection area, and Voronoi cells
cropped to a polygon component. Everything downstream (sampling, scoring)
is built on these primitives.

Conventions: outer rings are counterclockwise, holes clockwise, and disks
are closed (boundary points count as covered).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np
import shapely
from scipy.spatial import Voronoi
from scipy.spatial import QhullError
from shapely.geometry import MultiPolygon as ShapelyMultiPolygon
from shapely.geometry import Polygon as ShapelyPolygon


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Disk:
    """A closed disk; radius 0 is a permitted degenerate point-disk."""

    center: Point
    radius: float

    def __post_init__(self):
        if not (self.radius >= 0.0) or not math.isfinite(self.radius):
            raise ValueError(f"disk radius must be finite and >= 0, got {self.radius}")


def _as_ring(coords) -> np.ndarray:
    """Coerce a coordinate sequence to an open (m, 2) float ring.

    A repeated closing vertex, as GeoJSON writes it, is stripped.
    """
    ring = np.asarray(coords, dtype=float)
    if ring.ndim != 2 or ring.shape[1] != 2:
        raise ValueError("ring must be a sequence of (x, y) pairs")
    if len(ring) >= 2 and np.array_equal(ring[0], ring[-1]):
        ring = ring[:-1]
    if len(ring) < 3:
        raise ValueError("ring needs at least 3 distinct vertices")
    if not np.all(np.isfinite(ring)):
        raise ValueError("ring has non-finite coordinates")
    return ring


def ring_signed_area(ring: np.ndarray) -> float:
    """Shoelace signed area; positive for counterclockwise rings."""
    x = ring[:, 0]
    y = ring[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True)
class PolygonWithHoles:
    """Simple polygon with optional holes.

    Ring orientation is normalized on construction (outer CCW, holes CW);
    rings are stored as open (m, 2) float arrays.
    """

    outer: np.ndarray
    holes: tuple = ()
    _bbox: tuple = field(init=False, repr=False, compare=False, default=None)

    def __init__(self, outer, holes: Iterable = ()):
        outer = _as_ring(outer)
        if ring_signed_area(outer) < 0:
            outer = outer[::-1].copy()
        norm_holes = []
        for h in holes:
            h = _as_ring(h)
            if ring_signed_area(h) > 0:
                h = h[::-1].copy()
            norm_holes.append(h)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "holes", tuple(norm_holes))
        xs = outer[:, 0]
        ys = outer[:, 1]
        object.__setattr__(
            self, "_bbox", (float(xs.min()), float(ys.min()), float(xs.max()), float(ys.max()))
        )

    @property
    def bbox(self) -> tuple:
        """(xmin, ymin, xmax, ymax) of the outer ring."""
        return self._bbox

    def rings(self):
        yield self.outer
        yield from self.holes


# A multi-part polygon is just a tuple of parts; most operations accept either.
MultiPolygon = tuple
PolygonLike = Union[PolygonWithHoles, Sequence[PolygonWithHoles]]


def _parts(p: PolygonLike) -> tuple:
    if isinstance(p, PolygonWithHoles):
        return (p,)
    return tuple(p)


def polygon_area(p: PolygonLike) -> float:
    """Area of a polygon (holes subtract) or of a multi-part polygon."""
    total = 0.0
    for part in _parts(p):
        total += ring_signed_area(part.outer)
        for h in part.holes:
            total += ring_signed_area(h)  # holes are CW, so this subtracts
    return total


def bounding_box(p: PolygonLike) -> tuple:
    parts = _parts(p)
    if not parts:
        raise ValueError("empty geometry has no bounding box")
    boxes = [part.bbox for part in parts]
    return (
        min(b[0] for b in boxes),
        min(b[1] for b in boxes),
        max(b[2] for b in boxes),
        max(b[3] for b in boxes),
    )


def centroid(p: PolygonLike) -> Point:
    """Area-weighted centroid; holes subtract. Raises on zero net area."""
    a_sum = 0.0
    cx_sum = 0.0
    cy_sum = 0.0
    for part in _parts(p):
        for ring in part.rings():
            x = ring[:, 0]
            y = ring[:, 1]
            xn = np.roll(x, -1)
            yn = np.roll(y, -1)
            cross = x * yn - xn * y
            a_sum += 0.5 * float(cross.sum())
            cx_sum += float(((x + xn) * cross).sum()) / 6.0
            cy_sum += float(((y + yn) * cross).sum()) / 6.0
    if abs(a_sum) < 1e-300:
        raise ValueError("centroid of zero-area geometry")
    return Point(cx_sum / a_sum, cy_sum / a_sum)


def _ring_even_odd(pts: np.ndarray, ring: np.ndarray) -> np.ndarray:
    """Even-odd ray-cast containment of pts against one ring (boundary unspecified)."""
    x = pts[:, 0:1]
    y = pts[:, 1:2]
    ax = ring[None, :, 0]
    ay = ring[None, :, 1]
    bx = np.roll(ring[:, 0], -1)[None, :]
    by = np.roll(ring[:, 1], -1)[None, :]
    straddle = (ay > y) != (by > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xi = ax + (y - ay) * (bx - ax) / (by - ay)
    hits = straddle & (x < xi)
    return (hits.sum(axis=1) % 2).astype(bool)


def _on_ring(pts: np.ndarray, ring: np.ndarray) -> np.ndarray:
    """True where a point lies exactly on a ring segment."""
    x = pts[:, 0:1]
    y = pts[:, 1:2]
    ax = ring[None, :, 0]
    ay = ring[None, :, 1]
    bx = np.roll(ring[:, 0], -1)[None, :]
    by = np.roll(ring[:, 1], -1)[None, :]
    ex = bx - ax
    ey = by - ay
    px = x - ax
    py = y - ay
    cross = ex * py - ey * px
    dot = px * ex + py * ey
    len2 = ex * ex + ey * ey
    on = (cross == 0.0) & (dot >= 0.0) & (dot <= len2)
    return on.any(axis=1)


def points_in_polygon(pts, p: PolygonLike, chunk: int = 200_000) -> np.ndarray:
    """Vectorized closed containment: boundary points count as inside.

    Holes are open, so a point on a hole boundary is still inside.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    parts = _parts(p)
    n_edges = sum(len(r) for part in parts for r in part.rings())
    out = np.zeros(len(pts), dtype=bool)
    step = max(1, chunk // max(n_edges, 1))
    for lo in range(0, len(pts), step):
        sub = pts[lo : lo + step]
        acc = np.zeros(len(sub), dtype=bool)
        for part in parts:
            inside = _ring_even_odd(sub, part.outer)
            boundary = _on_ring(sub, part.outer)
            for h in part.holes:
                inside &= ~_ring_even_odd(sub, h)
                boundary |= _on_ring(sub, h)
            acc |= inside | boundary
        out[lo : lo + step] = acc
    return out


def point_in_polygon(q, p: PolygonLike) -> bool:
    """Closed containment test for a single point."""
    return bool(points_in_polygon(np.asarray([[q[0], q[1]]], dtype=float), p)[0])


def triangulate(p: PolygonWithHoles) -> list:
    """Triangulate a polygon into a list of (3, 2) vertex arrays.

    The triangles partition the polygon exactly (constrained Delaunay, no
    Steiner points); any valid partition is acceptable downstream.
    """
    if polygon_area(p) <= 0.0:
        raise ValueError("cannot triangulate a zero-area polygon")
    collection = shapely.constrained_delaunay_triangles(_to_shapely(p))
    tris = []
    for geom in collection.geoms:
        ring = np.asarray(geom.exterior.coords[:-1], dtype=float)
        if len(ring) == 3 and abs(ring_signed_area(ring)) > 0.0:
            tris.append(ring)
    if not tris:
        raise ValueError("triangulation produced no triangles")
    return tris


def _ring_disk_area(ring: np.ndarray, cx: float, cy: float, r: float) -> float:
    """Signed area of (ring interior) ∩ (closed disk), via per-edge contributions.

    Each directed edge is split at its circle intersections; sub-segments
    inside the circle contribute the signed triangle area with the disk
    center, sub-segments outside contribute the signed circular-sector area
    of the subtended angle. CCW rings yield positive area, CW negative.
    """
    a = ring - np.array([cx, cy])
    b = np.roll(a, -1, axis=0)
    e = b - a
    c2 = (e * e).sum(axis=1)
    c1 = 2.0 * (a * e).sum(axis=1)
    c0 = (a * a).sum(axis=1) - r * r
    disc = c1 * c1 - 4.0 * c2 * c0
    ok = (disc > 0.0) & (c2 > 0.0)
    sq = np.sqrt(np.where(ok, disc, 0.0))
    denom = np.where(c2 > 0.0, 2.0 * c2, 1.0)
    t1 = np.where(ok, (-c1 - sq) / denom, 0.0)
    t2 = np.where(ok, (-c1 + sq) / denom, 0.0)
    t1 = np.clip(t1, 0.0, 1.0)
    t2 = np.clip(t2, 0.0, 1.0)

    total = 0.0
    bounds = (np.zeros_like(t1), t1, t2, np.ones_like(t1))
    r2 = r * r
    for ta, tb in zip(bounds[:-1], bounds[1:]):
        pa = a + ta[:, None] * e
        pb = a + tb[:, None] * e
        mid = a + (0.5 * (ta + tb))[:, None] * e
        inside = (mid * mid).sum(axis=1) <= r2
        tri = 0.5 * (pa[:, 0] * pb[:, 1] - pa[:, 1] * pb[:, 0])
        dth = np.arctan2(pb[:, 1], pb[:, 0]) - np.arctan2(pa[:, 1], pa[:, 0])
        dth -= 2.0 * np.pi * np.round(dth / (2.0 * np.pi))
        sec = 0.5 * r2 * dth
        seg = np.where(inside, tri, sec)
        total += float(np.where(tb > ta, seg, 0.0).sum())
    return total


def disk_polygon_area(d: Disk, p: PolygonLike) -> float:
    """Exact area of (closed disk) ∩ polygon; holes subtract by orientation."""
    if d.radius <= 0.0:
        return 0.0
    total = 0.0
    for part in _parts(p):
        for ring in part.rings():
            total += _ring_disk_area(ring, d.center.x, d.center.y, d.radius)
    return max(total, 0.0)


# ---------------------------------------------------------------------------
# shapely bridging (validation, boolean ops, Voronoi cropping)
# ---------------------------------------------------------------------------


def _to_shapely(p: PolygonLike):
    parts = _parts(p)
    polys = [ShapelyPolygon(part.outer, [h for h in part.holes]) for part in parts]
    if len(polys) == 1:
        return polys[0]
    return ShapelyMultiPolygon(polys)


def _from_shapely(geom, min_area: float = 0.0) -> tuple:
    """Convert a shapely result to a tuple of PolygonWithHoles parts."""
    parts = []

    def _collect(g):
        if g.is_empty:
            return
        if isinstance(g, ShapelyPolygon):
            if g.area > min_area:
                parts.append(
                    PolygonWithHoles(
                        np.asarray(g.exterior.coords[:-1], dtype=float),
                        [np.asarray(i.coords[:-1], dtype=float) for i in g.interiors],
                    )
                )
        elif hasattr(g, "geoms"):
            for sub in g.geoms:
                _collect(sub)
        # lines/points from boundary-touching intersections carry no area

    _collect(geom)
    return tuple(parts)


def _halfplane_cells(pts: np.ndarray, span: float, origin: np.ndarray) -> list:
    """Voronoi cells as intersections of bisector half-planes (degenerate-safe)."""
    big = 8.0 * span
    base = shapely.box(origin[0] - big, origin[1] - big, origin[0] + big, origin[1] + big)
    cells = []
    for i in range(len(pts)):
        cell = base
        for j in range(len(pts)):
            if j == i:
                continue
            u = pts[j] - pts[i]
            norm = math.hypot(u[0], u[1])
            if norm == 0.0:
                raise ValueError("duplicate sites")
            u = u / norm
            m = 0.5 * (pts[i] + pts[j])
            perp = np.array([-u[1], u[0]])
            quad = [
                m + perp * 4.0 * big,
                m - perp * 4.0 * big,
                m - perp * 4.0 * big - u * 8.0 * big,
                m + perp * 4.0 * big - u * 8.0 * big,
            ]
            cell = cell.intersection(ShapelyPolygon(quad))
        cells.append(cell)
    return cells


def _voronoi_cells(pts: np.ndarray, span: float) -> list:
    """Unclipped Voronoi cells as shapely polygons, ordered like the sites.

    Unbounded cells are closed off far beyond the span of interest, so
    cropping to any component within that span is exact.
    """
    origin = pts.mean(axis=0)
    if len(pts) < 4:
        return _halfplane_cells(pts, span, origin)
    try:
        vor = Voronoi(pts)
    except QhullError:
        return _halfplane_cells(pts, span, origin)

    far = 8.0 * span
    ridges = {}
    for (p1, p2), rv in zip(vor.ridge_points, vor.ridge_vertices):
        ridges.setdefault(p1, []).append((p2, rv[0], rv[1]))
        ridges.setdefault(p2, []).append((p1, rv[0], rv[1]))

    cells = []
    for i, region_idx in enumerate(vor.point_region):
        region = vor.regions[region_idx]
        if region and -1 not in region:
            cells.append(ShapelyPolygon(vor.vertices[region]))
            continue
        verts = [vor.vertices[v] for v in region if v >= 0]
        for j, v1, v2 in ridges.get(i, ()):
            if v2 < 0:
                v1, v2 = v2, v1
            if v1 >= 0:
                continue
            t = vor.points[j] - vor.points[i]
            t = t / np.linalg.norm(t)
            n = np.array([-t[1], t[0]])
            mid = 0.5 * (vor.points[i] + vor.points[j])
            sign = np.sign(np.dot(mid - origin, n)) or 1.0
            verts.append(vor.vertices[v2] + sign * n * far)
        arr = np.asarray(verts)
        mean = arr.mean(axis=0)
        order = np.argsort(np.arctan2(arr[:, 1] - mean[1], arr[:, 0] - mean[0]))
        cells.append(ShapelyPolygon(arr[order]))
    return cells


def _clipped_voronoi_shapely(pts: np.ndarray, component: PolygonLike, comp_shp) -> list:
    """Cropped Voronoi cells as shapely geometries (None for degenerate
    cells); shared engine for clipped_voronoi and Lloyd relaxation."""
    comp_area = comp_shp.area
    if len(pts) == 1:
        return [comp_shp]
    x0, y0, x1, y1 = bounding_box(component)
    span = max(x1 - x0, y1 - y0, 1e-30)
    raw_cells = _voronoi_cells(pts, span)
    # A cell always contains its own site, which lies inside the component,
    # so a cell that does not touch the component boundary is entirely
    # inside it and needs no clipping.
    boundary = comp_shp.boundary
    shapely.prepare(boundary)
    crosses = shapely.intersects(boundary, np.asarray(raw_cells, dtype=object))
    cells = []
    for i, raw in enumerate(raw_cells):
        cell = comp_shp.intersection(raw) if crosses[i] else raw
        if cell.is_empty or cell.area < 1e-12 * comp_area:
            cell = None
        cells.append(cell)
    return cells


def clipped_voronoi(sites, component: PolygonLike) -> list:
    """Euclidean Voronoi cells of the sites, cropped to the component.

    Returns one tuple of PolygonWithHoles parts per site, in site order.
    A cell whose cropped area falls below 1e-12 of the component area is
    returned as an empty tuple (a point-cell at its site).
    """
    pts = np.asarray([(s[0], s[1]) for s in sites], dtype=float)
    if len(pts) == 0:
        return []
    uniq = {(float(x), float(y)) for x, y in pts}
    if len(uniq) != len(pts):
        raise ValueError("duplicate sites")
    inside = points_in_polygon(pts, component)
    if not inside.all():
        k = int(np.flatnonzero(~inside)[0])
        raise ValueError(f"site {k} at {tuple(pts[k])} lies outside the component")
    comp_shp = _to_shapely(component)
    cells = _clipped_voronoi_shapely(pts, component, comp_shp)
    return [() if c is None else _from_shapely(c) for c in cells]
