"""Synthetic two-class test maps.

Generators for reproducible evaluation: a planted-disk map whose optimal
summary disk is known by construction, smooth irregular "blob" maps for
strategy comparisons, and nonconvex L/C-shaped components for relaxation
stress tests. All outlines here are deliberately non-axis-aligned (except
the planted map's frame): grids aligned to a rectangle's bbox gain whole
rows of points at once, which makes exact target counts unreachable.
"""

from __future__ import annotations

import math

import numpy as np
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.ops import unary_union

from chorodisk.geometry import PolygonWithHoles, _from_shapely, polygon_area
from chorodisk.mapmodel import Region, RegionMap


def regular_ngon(center, r: float, k: int = 64) -> np.ndarray:
    """Vertex ring of a regular k-gon inscribed in the radius-r circle."""
    th = 2.0 * np.pi * np.arange(k) / k
    return np.column_stack([center[0] + r * np.cos(th), center[1] + r * np.sin(th)])


PLANTED_CENTER = (0.35, 0.6)
PLANTED_RADIUS = 0.2


def planted_disk_map() -> RegionMap:
    """Unit square; class 1 is a regular 64-gon approximating the disk of
    radius 0.2 at (0.35, 0.6), class 2 is the rest of the square."""
    gon = regular_ngon(PLANTED_CENTER, PLANTED_RADIUS, 64)
    disk_part = PolygonWithHoles(gon)
    rest = PolygonWithHoles([(0, 0), (1, 0), (1, 1), (0, 1)], [gon])
    return RegionMap((Region((disk_part,), 1), Region((rest,), 2)), "synthetic")


def blob_ring(rng, center, mean_r: float, wobble: float = 0.25, k: int = 48,
              stretch: float = 1.0, angle: float = 0.0) -> np.ndarray:
    """Smooth star-convex ring: radius modulated by a few random harmonics,
    optionally stretched along a rotated axis."""
    th = 2.0 * np.pi * np.arange(k) / k
    r = np.ones(k)
    for h in range(2, 6):
        amp = wobble * rng.uniform(0.2, 1.0) / h
        r += amp * np.cos(h * th + rng.uniform(0, 2 * np.pi))
    r = np.maximum(r, 0.2) * mean_r
    x = r * np.cos(th) * stretch
    y = r * np.sin(th)
    ca, sa = math.cos(angle), math.sin(angle)
    return np.column_stack(
        [center[0] + ca * x - sa * y, center[1] + sa * x + ca * y]
    )


def blob_map(seed: int, n_blobs: int = 3, elongate: bool = False) -> RegionMap:
    """Irregular outer boundary with n_blobs class-1 islands, class 2 the
    remainder. Deterministic per seed; retries internally until both
    classes have substantial area."""
    rng = np.random.default_rng(seed)
    for _ in range(50):
        outer = ShapelyPolygon(blob_ring(rng, (0.5, 0.5), 0.55, wobble=0.3, k=72))
        blobs = []
        for _ in range(n_blobs):
            c = (rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8))
            stretch = rng.uniform(1.6, 2.6) if elongate else 1.0
            ring = blob_ring(
                rng, c, rng.uniform(0.10, 0.22), wobble=0.35,
                k=40, stretch=stretch, angle=rng.uniform(0, np.pi),
            )
            blobs.append(ShapelyPolygon(ring))
        inner = unary_union(blobs).intersection(outer)
        rest = outer.difference(inner)
        if inner.is_empty or rest.is_empty:
            continue
        if not (inner.is_valid and rest.is_valid):
            continue
        p_inner = _from_shapely(inner, min_area=1e-9)
        p_rest = _from_shapely(rest, min_area=1e-9)
        if not p_inner or not p_rest:
            continue
        a_in = polygon_area(p_inner)
        a_out = polygon_area(p_rest)
        total = a_in + a_out
        if a_in < 0.05 * total or a_out < 0.05 * total:
            continue
        return RegionMap((Region(p_inner, 1), Region(p_rest, 2)), "synthetic")
    raise RuntimeError(f"blob_map({seed}) failed to produce a usable map")


def l_shape(scale: float = 1.0, angle: float = 0.0, origin=(0.0, 0.0)) -> PolygonWithHoles:
    """Nonconvex L, optionally rotated/scaled/translated."""
    ring = np.array([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], dtype=float)
    return _place(ring, scale, angle, origin)


def c_shape(scale: float = 1.0, angle: float = 0.0, origin=(0.0, 0.0)) -> PolygonWithHoles:
    """Nonconvex C opening to the right."""
    ring = np.array(
        [(0, 0), (3, 0), (3, 1), (1, 1), (1, 2), (3, 2), (3, 3), (0, 3)], dtype=float
    )
    return _place(ring, scale, angle, origin)


def _place(ring: np.ndarray, scale: float, angle: float, origin) -> PolygonWithHoles:
    ca, sa = math.cos(angle), math.sin(angle)
    x = ring[:, 0] * scale
    y = ring[:, 1] * scale
    return PolygonWithHoles(
        np.column_stack([origin[0] + ca * x - sa * y, origin[1] + sa * x + ca * y])
    )


def corpus(n_maps: int = 8):
    """The synthetic evaluation corpus: named irregular two-class maps."""
    out = []
    for i in range(n_maps):
        name = f"blob{i:02d}"
        out.append((name, blob_map(1000 + 17 * i, n_blobs=2 + i % 3, elongate=i % 2 == 1)))
    return out


def map_to_geojson(region_map: RegionMap) -> dict:
    """RegionMap -> GeoJSON FeatureCollection (class in property 'class')."""
    feats = []
    for region in region_map.regions:
        polys = []
        for part in region.shape:
            rings = [np.vstack([part.outer, part.outer[:1]]).tolist()]
            for h in part.holes:
                rings.append(np.vstack([h, h[:1]]).tolist())
            polys.append(rings)
        if len(polys) == 1:
            geom = {"type": "Polygon", "coordinates": polys[0]}
        else:
            geom = {"type": "MultiPolygon", "coordinates": polys}
        feats.append(
            {"type": "Feature", "geometry": geom, "properties": {"class": region.class_id}}
        )
    return {"type": "FeatureCollection", "features": feats}
