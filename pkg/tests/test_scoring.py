import math

import numpy as np
import pytest

from chorodisk.geometry import Disk, Point, PolygonWithHoles
from chorodisk.mapmodel import ClassDistance, Region, RegionMap, class_stats
from chorodisk.scoring import (
    disk_score,
    normalize_score,
    relative_quality,
    symmetric_difference,
)


def _split_rect_map():
    """[0,2]x[0,1]: left unit square class 1, right class 2."""
    left = PolygonWithHoles([(0, 0), (1, 0), (1, 1), (0, 1)])
    right = PolygonWithHoles([(1, 0), (2, 0), (2, 1), (1, 1)])
    return RegionMap((Region((left,), 1), Region((right,), 2)))


def _far_squares_map():
    """Two unit squares far apart; a disk can cover one without the other."""
    s1 = PolygonWithHoles([(0, 0), (1, 0), (1, 1), (0, 1)])
    s2 = PolygonWithHoles([(10, 0), (11, 0), (11, 1), (10, 1)])
    return RegionMap((Region((s1,), 1), Region((s2,), 2)))


def test_disk_score_examples():
    m = _split_rect_map()
    stats = class_stats(m, 1, 0.5)
    r = disk_score(m, Disk(Point(0.5, 0.5), 0.25), 1, stats)
    assert r.raw_score == pytest.approx(0.5 * math.pi / 16, abs=1e-12)
    assert r.covered_target == pytest.approx(math.pi / 16, abs=1e-12)
    assert r.covered_other == 0.0

    r = disk_score(m, Disk(Point(1.0, 0.5), 0.25), 1, stats)
    assert r.raw_score == pytest.approx(0.0, abs=1e-12)


def test_disk_score_full_map_zero_under_auto_alpha():
    m = _split_rect_map()
    stats = class_stats(m, 1, "auto")
    r = disk_score(m, Disk(Point(1.0, 0.5), 10.0), 1, stats)
    assert abs(r.raw_score) <= 1e-9 * stats.alpha * m.class_area(1)
    assert r.normalized == pytest.approx(0.0, abs=1e-9)


def test_score_report_internal_identity():
    m = _far_squares_map()
    rng = np.random.default_rng(6)
    stats = class_stats(m, 1, "auto")
    for _ in range(40):
        d = Disk(Point(rng.uniform(-1, 12), rng.uniform(-1, 2)), rng.uniform(0.1, 4))
        r = disk_score(m, d, 1, stats)
        expect = stats.alpha * r.covered_target - (1 - stats.alpha) * r.covered_other
        assert r.raw_score == pytest.approx(expect, rel=1e-9, abs=1e-15)


def test_disk_score_class_distance_table_matches_fast_path():
    m = _split_rect_map()
    stats = class_stats(m, 1, "auto")
    table = ClassDistance.two_class(stats.alpha, 1)
    rng = np.random.default_rng(16)
    for _ in range(20):
        d = Disk(Point(rng.uniform(0, 2), rng.uniform(0, 1)), rng.uniform(0.05, 1.5))
        a = disk_score(m, d, 1, stats)
        b = disk_score(m, d, 1, stats, delta=table)
        assert a.raw_score == b.raw_score


def test_normalize_score_extremes():
    m = _far_squares_map()
    stats = class_stats(m, 1, "auto")
    # disk covering exactly S1 and none of S2
    cover_s1 = disk_score(m, Disk(Point(0.5, 0.5), 0.7072), 1, stats)
    assert cover_s1.normalized == pytest.approx(1.0, rel=1e-4)
    # disk covering exactly S2 and none of S1
    cover_s2 = disk_score(m, Disk(Point(10.5, 0.5), 0.7072), 1, stats)
    assert cover_s2.normalized == pytest.approx(-1.0, rel=1e-4)
    assert normalize_score(0.0, stats) == 0.0
    assert normalize_score(stats.alpha * m.class_area(1), stats, 1) == pytest.approx(1.0)


def test_normalize_score_monotone():
    m = _split_rect_map()
    stats = class_stats(m, 1, "auto")
    raws = np.linspace(-stats.alpha * 0.9, stats.alpha * 0.9, 21)
    vals = [normalize_score(float(r), stats, 1) for r in raws]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert all(-1.0 <= v <= 1.0 for v in vals)


def test_normalize_score_degenerate_errors():
    from chorodisk.mapmodel import ClassStats
    with pytest.raises(ValueError):
        normalize_score(0.5, ClassStats(1.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        normalize_score(0.5, ClassStats(0.0, 1.0, 0.5))


def test_symmetric_difference_examples():
    m = _far_squares_map()
    # disk fully covering S1 (and nothing of S2): symdiff = |S1| - 2|S1| + |S1| = 0
    d = Disk(Point(0.5, 0.5), 2.0)
    assert symmetric_difference(m, d, 1) == pytest.approx(0.0, abs=1e-12)
    # empty disk: symdiff = |S1|
    d0 = Disk(Point(-5, -5), 0.0)
    assert symmetric_difference(m, d0, 1) == pytest.approx(m.class_area(1), rel=1e-12)


def test_alpha_half_equivalence_identity_and_ranking():
    m = _split_rect_map()
    stats = class_stats(m, 1, 0.5)
    rng = np.random.default_rng(62)
    disks = [Disk(Point(rng.uniform(0, 2), rng.uniform(0, 1)), rng.uniform(0.05, 1.2))
             for _ in range(60)]
    raws, sds = [], []
    s1 = m.class_area(1)
    for d in disks:
        raw = disk_score(m, d, 1, stats).raw_score
        sd = symmetric_difference(m, d, 1)
        assert raw == pytest.approx(0.5 * (s1 - sd), rel=1e-9, abs=1e-12)
        raws.append(raw)
        sds.append(sd)
    order_by_raw = np.argsort(raws)
    order_by_sd_desc = np.argsort(sds)[::-1]
    # identical scores must not spoil the ranking comparison: compare values
    assert [round(raws[i], 12) for i in order_by_raw] == \
           [round(raws[i], 12) for i in order_by_sd_desc]


def test_relative_quality():
    assert relative_quality(2.0, 2.0) == 1.0
    assert relative_quality(0.0, 2.0) == 0.0
    assert relative_quality(1.0, 2.0) == 0.5
    with pytest.raises(ValueError):
        relative_quality(1.0, 0.0)
    with pytest.raises(ValueError):
        relative_quality(1.0, -2.0)
