"""Exact polygon-based evaluation of a fitted disk.

The raw objective is alpha * |S1 ∩ D| - (1 - alpha) * |S2 ∩ D| computed
from the actual region polygons (never from sample weights); the general
per-class-pair form substitutes a ClassDistance table. Also: score
normalization to [-1, 1], the symmetric-difference equivalent of the
objective, and the relative quality used to compare strategies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from chorodisk.geometry import Disk, disk_polygon_area
from chorodisk.mapmodel import ClassDistance, ClassStats, RegionMap


@dataclass(frozen=True)
class ScoreReport:
    raw_score: float
    normalized: float
    covered_target: float
    covered_other: float
    alpha: float


def _covered_by_class(region_map: RegionMap, d: Disk) -> dict:
    """Disk-covered area per class, summed in region order."""
    out = {1: 0.0, 2: 0.0}
    for region in region_map.regions:
        out[region.class_id] += disk_polygon_area(d, region.shape)
    return out


def disk_score(
    region_map: RegionMap,
    d: Disk,
    target_class: int,
    stats: ClassStats,
    delta: Optional[ClassDistance] = None,
) -> ScoreReport:
    """Exact score of a disk against the map.

    Covered areas are disk-polygon intersections per region; area outside
    every region contributes nothing. With the default two-class weights
    the raw score is alpha * covered_target - (1 - alpha) * covered_other;
    a ClassDistance table generalizes the per-class weights.
    """
    covered = _covered_by_class(region_map, d)
    other = 2 if target_class == 1 else 1
    cov_t = covered[target_class]
    cov_o = covered[other]
    if delta is None:
        delta = ClassDistance.two_class(stats.alpha, target_class)
    raw = delta(target_class, target_class) * cov_t + delta(other, target_class) * cov_o
    try:
        norm = normalize_score(raw, stats, target_class)
    except ValueError:
        norm = 0.0 if raw == 0.0 else float("nan")
    return ScoreReport(raw, norm, cov_t, cov_o, stats.alpha)


def normalize_score(raw: float, stats: ClassStats, target_class: int = 1) -> float:
    """Map a raw score to [-1, 1] by the extremal achievable scores.

    Positive scores divide by alpha * |S_target| (full coverage, no
    leakage); negative scores divide by (1 - alpha) * |S_other| (covering
    all of the other class and none of the target). Under auto alpha the
    two denominators coincide, so this is one linear scaling.
    """
    s_t = stats.area_class1 if target_class == 1 else stats.area_class2
    s_o = stats.area_class2 if target_class == 1 else stats.area_class1
    pos_den = stats.alpha * s_t
    neg_den = (1.0 - stats.alpha) * s_o
    if pos_den <= 0.0 or neg_den <= 0.0:
        raise ValueError("normalization needs alpha*|S_target| > 0 and (1-alpha)*|S_other| > 0")
    return raw / pos_den if raw >= 0.0 else raw / neg_den


def symmetric_difference(region_map: RegionMap, d: Disk, target_class: int) -> float:
    """Area of the symmetric difference between D' (the disk clipped to
    the map) and the target class: |S_t| - 2 |S_t ∩ D| + |D'|.

    Minimizing this over disks is equivalent to maximizing the raw score
    at alpha = 1/2.
    """
    covered = _covered_by_class(region_map, d)
    other = 2 if target_class == 1 else 1
    s_t = region_map.class_area(target_class)
    d_prime = covered[target_class] + covered[other]
    return s_t - 2.0 * covered[target_class] + d_prime


def relative_quality(score: float, best_score: float) -> float:
    """score / best_score; the cross-strategy comparison ratio."""
    if not best_score > 0.0:
        raise ValueError("relative quality needs a positive best score")
    return score / best_score
