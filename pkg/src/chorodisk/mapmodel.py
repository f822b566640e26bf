"""Region-map ingestion and two-class bookkeeping.

Loads GeoJSON region maps, assigns each region one of two classes (taken
from a property or derived from a numeric attribute by natural breaks),
and computes class areas and the weighting scalar alpha used by scoring.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np
from shapely import STRtree
from shapely.validation import explain_validity

from chorodisk.geometry import PolygonWithHoles, _parts, _to_shapely, polygon_area

# Relative tolerance (of the smaller region) for pairwise interior overlap;
# real data has sliver overlaps that should not be fatal.
OVERLAP_RTOL = 1e-9


@dataclass(frozen=True)
class Region:
    """One map region: a polygon (possibly multi-part) with a class label."""

    shape: tuple  # tuple of PolygonWithHoles parts
    class_id: int

    def __post_init__(self):
        if self.class_id not in (1, 2):
            raise ValueError(f"class_id must be 1 or 2, got {self.class_id!r}")

    @property
    def area(self) -> float:
        return polygon_area(self.shape)


@dataclass(frozen=True)
class RegionMap:
    regions: tuple
    crs_note: str = "planar"

    @property
    def total_area(self) -> float:
        return sum(r.area for r in self.regions)

    def class_area(self, class_id: int) -> float:
        return sum(r.area for r in self.regions if r.class_id == class_id)

    def class_union(self, class_id: int) -> tuple:
        """All polygon parts of one class, in region order."""
        parts = []
        for r in self.regions:
            if r.class_id == class_id:
                parts.extend(r.shape)
        return tuple(parts)


@dataclass(frozen=True)
class ClassStats:
    area_class1: float
    area_class2: float
    alpha: float


@dataclass(frozen=True)
class ClassDistance:
    """Per-pair scoring weights δ(v, v′): reward where the region class v
    matches the summarized class v′, penalize where it does not."""

    table: Mapping

    def __call__(self, v: int, v_prime: int) -> float:
        return self.table[(v, v_prime)]

    @staticmethod
    def two_class(alpha: float, target_class: int = 1) -> "ClassDistance":
        other = 2 if target_class == 1 else 1
        return ClassDistance(
            {
                (target_class, target_class): alpha,
                (other, target_class): alpha - 1.0,
                (other, other): 1.0 - alpha,
                (target_class, other): -alpha,
            }
        )


def _geometry_parts(geom: Mapping) -> tuple:
    gtype = geom.get("type")
    if gtype == "Polygon":
        poly_coord_sets = [geom["coordinates"]]
    elif gtype == "MultiPolygon":
        poly_coord_sets = list(geom["coordinates"])
    else:
        raise ValueError(f"unsupported geometry type {gtype!r} (need Polygon/MultiPolygon)")
    parts = []
    for rings in poly_coord_sets:
        if not rings:
            raise ValueError("polygon with no rings")
        parts.append(PolygonWithHoles(rings[0], rings[1:]))
    return tuple(parts)


def _check_validity(parts: tuple, label: str):
    shp = _to_shapely(parts)
    if not shp.is_valid:
        raise ValueError(f"invalid geometry for {label}: {explain_validity(shp)}")


def _check_overlap(regions: Sequence[Region]):
    shapes = [_to_shapely(r.shape) for r in regions]
    tree = STRtree(shapes)
    for i, shp in enumerate(shapes):
        for j in tree.query(shp):
            j = int(j)
            if j <= i:
                continue
            inter = shp.intersection(shapes[j]).area
            limit = OVERLAP_RTOL * max(min(shp.area, shapes[j].area), 1e-300)
            if inter > limit:
                raise ValueError(
                    f"regions {i} and {j} overlap (shared area {inter:.3g} beyond tolerance)"
                )


def classify_two(values) -> list:
    """Two-class natural breaks: the sorted-order split minimizing total
    within-class squared deviation. The lower-valued group is class 1.

    Splits are only placed where the sorted value strictly increases, so
    equal values always land in the same class and the result is invariant
    under permutation of the input. Ties between split costs go to the
    split with fewer class-1 members.
    """
    vals = np.asarray(list(values), dtype=float)
    n = len(vals)
    if n < 2 or np.unique(vals).size < 2:
        raise ValueError("degenerate classification: need at least two distinct values")
    s = np.sort(vals)
    pre = np.concatenate(([0.0], np.cumsum(s)))
    pre2 = np.concatenate(([0.0], np.cumsum(s * s)))
    best_cost = None
    best_k = None
    for k in range(1, n):
        if s[k] <= s[k - 1]:
            continue
        sse1 = pre2[k] - pre[k] ** 2 / k
        m = n - k
        sse2 = (pre2[n] - pre2[k]) - (pre[n] - pre[k]) ** 2 / m
        cost = sse1 + sse2
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_k = k
    split_value = s[best_k - 1]
    return [1 if v <= split_value else 2 for v in vals]


def load_map(
    src: Union[bytes, str, Mapping, os.PathLike],
    class_field: str = "class",
    value_field: str = None,
    crs_note: str = None,
) -> RegionMap:
    """Load a GeoJSON FeatureCollection as a validated RegionMap.

    Classes come from integer property `class_field` (values 1 or 2), or,
    if `value_field` is given instead, from natural-breaks classification
    of that numeric attribute. Ring orientation is normalized; invalid
    rings and overlapping region interiors are rejected.
    """
    if isinstance(src, os.PathLike):
        with open(src, "rb") as fh:
            src = fh.read()
    if isinstance(src, (bytes, bytearray)):
        src = src.decode("utf-8")
    if isinstance(src, str):
        try:
            obj = json.loads(src)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid GeoJSON: {exc}") from exc
    else:
        obj = src

    if not isinstance(obj, Mapping) or obj.get("type") != "FeatureCollection":
        raise ValueError("expected a GeoJSON FeatureCollection")
    features = obj.get("features") or []
    if not features:
        raise ValueError("no regions")

    all_parts = []
    raw = []
    for idx, feat in enumerate(features):
        geom = feat.get("geometry") or {}
        parts = _geometry_parts(geom)
        _check_validity(parts, f"feature {idx}")
        props = feat.get("properties") or {}
        raw.append((parts, props))
        all_parts.append(parts)

    if value_field is not None:
        values = []
        for idx, (_, props) in enumerate(raw):
            if value_field not in props:
                raise ValueError(f"feature {idx} missing value field {value_field!r}")
            values.append(float(props[value_field]))
        classes = classify_two(values)
    else:
        classes = []
        for idx, (_, props) in enumerate(raw):
            if class_field not in props:
                raise ValueError(f"feature {idx} missing class field {class_field!r}")
            c = props[class_field]
            if not (isinstance(c, (int, float)) and float(c) in (1.0, 2.0)):
                raise ValueError(f"feature {idx}: class must be 1 or 2, got {c!r}")
            classes.append(int(c))

    regions = tuple(Region(parts, c) for (parts, _), c in zip(raw, classes))
    _check_overlap(regions)
    total = sum(r.area for r in regions)
    if total <= 0.0:
        raise ValueError("map has zero total area")
    if crs_note is None:
        crs_note = str(obj.get("crs", {}).get("properties", {}).get("name", "planar"))
    return RegionMap(regions, crs_note)


def class_stats(region_map: RegionMap, target_class: int = 1, alpha="auto") -> ClassStats:
    """Class areas plus the weighting scalar alpha.

    In auto mode alpha = |S_other| / (|S_target| + |S_other|), which makes
    the reward for covering target area and the penalty for covering the
    other class balance exactly: alpha * |S_target| = (1 - alpha) * |S_other|.
    Pass a number to fix alpha instead.
    """
    if target_class not in (1, 2):
        raise ValueError(f"target_class must be 1 or 2, got {target_class!r}")
    a1 = region_map.class_area(1)
    a2 = region_map.class_area(2)
    if alpha == "auto":
        tgt = a1 if target_class == 1 else a2
        oth = a2 if target_class == 1 else a1
        if tgt <= 0.0 or oth <= 0.0:
            raise ValueError("auto alpha needs strictly positive area in both classes")
        alpha_val = oth / (tgt + oth)
    else:
        alpha_val = float(alpha)
        if not 0.0 <= alpha_val <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {alpha_val}")
    return ClassStats(a1, a2, alpha_val)


def components(region_map: RegionMap) -> list:
    """Flatten every region into its connected components.

    Multi-part shapes yield one entry per part; holes do not disconnect a
    part. Ordering is stable: region order, then part order.
    """
    out = []
    for region in region_map.regions:
        for part in _parts(region.shape):
            out.append((part, region.class_id))
    return out
