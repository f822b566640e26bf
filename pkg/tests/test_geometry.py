import math

import numpy as np
import pytest

from chorodisk.geometry import (
    Disk,
    Point,
    PolygonWithHoles,
    bounding_box,
    centroid,
    clipped_voronoi,
    disk_polygon_area,
    point_in_polygon,
    points_in_polygon,
    polygon_area,
    triangulate,
)

UNIT_SQUARE = PolygonWithHoles([(0, 0), (1, 0), (1, 1), (0, 1)])
HOLED_SQUARE = PolygonWithHoles(
    [(0, 0), (1, 0), (1, 1), (0, 1)],
    [[(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]],
)


def _tri_area(t):
    return abs((t[1][0] - t[0][0]) * (t[2][1] - t[0][1])
               - (t[1][1] - t[0][1]) * (t[2][0] - t[0][0])) / 2


def _rand_star(rng, n=12, cx=0.0, cy=0.0, scale=1.0):
    """Random star-shaped polygon around (cx, cy)."""
    angles = np.sort(rng.uniform(0, 2 * np.pi, n))
    radii = rng.uniform(0.3, 1.0, n) * scale
    pts = [(cx + r * np.cos(a), cy + r * np.sin(a)) for a, r in zip(angles, radii)]
    return PolygonWithHoles(pts)


def test_polygon_area_examples():
    assert polygon_area(UNIT_SQUARE) == pytest.approx(1.0, abs=1e-15)
    assert polygon_area(HOLED_SQUARE) == pytest.approx(0.75, abs=1e-15)
    tri = PolygonWithHoles([(0, 0), (1, 0), (0, 1)])
    assert polygon_area(tri) == pytest.approx(0.5, abs=1e-15)


def test_ring_orientation_normalized():
    # clockwise outer ring and counterclockwise hole both get flipped
    p = PolygonWithHoles(
        [(0, 0), (0, 1), (1, 1), (1, 0)],
        [[(0.25, 0.25), (0.25, 0.75), (0.75, 0.75), (0.75, 0.25)]],
    )
    assert polygon_area(p) == pytest.approx(0.75, abs=1e-15)
    assert point_in_polygon(Point(0.5, 0.5), p) is False


def test_polygon_rejects_degenerate_rings():
    with pytest.raises(ValueError):
        PolygonWithHoles([(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        PolygonWithHoles([(0, 0), (1, 0), (float("nan"), 1)])


def test_bounding_box():
    assert bounding_box(HOLED_SQUARE) == (0.0, 0.0, 1.0, 1.0)
    two = (UNIT_SQUARE, PolygonWithHoles([(2, -1), (3, -1), (3, 0.5)]))
    assert bounding_box(two) == (0.0, -1.0, 3.0, 1.0)


def test_triangulate_examples():
    quad = PolygonWithHoles([(0, 0), (2, 0), (2, 1), (0, 1)])
    tris = triangulate(quad)
    assert len(tris) >= 2
    assert sum(_tri_area(t) for t in tris) == pytest.approx(2.0, rel=1e-9)

    tris = triangulate(HOLED_SQUARE)
    assert sum(_tri_area(t) for t in tris) == pytest.approx(0.75, rel=1e-9)

    tri_in = PolygonWithHoles([(0, 0), (1, 0), (0, 1)])
    tris = triangulate(tri_in)
    assert len(tris) == 1
    assert {tuple(v) for v in tris[0]} == {(0, 0), (1, 0), (0, 1)}


def test_triangulate_vertices_come_from_polygon():
    rng = np.random.default_rng(7)
    p = _rand_star(rng, n=17)
    allowed = {tuple(v) for v in p.outer}
    for t in triangulate(p):
        for v in t:
            assert tuple(v) in allowed


def test_point_in_polygon_conventions():
    assert point_in_polygon(Point(0.5, 0.5), UNIT_SQUARE)
    assert point_in_polygon(Point(0.0, 0.5), UNIT_SQUARE)  # edge
    assert point_in_polygon(Point(0.0, 0.0), UNIT_SQUARE)  # vertex
    assert not point_in_polygon(Point(1.0001, 0.5), UNIT_SQUARE)
    assert not point_in_polygon(Point(0.5, 0.5), HOLED_SQUARE)  # in hole
    # hole boundary is not in the open hole, so it counts as inside
    assert point_in_polygon(Point(0.25, 0.5), HOLED_SQUARE)


def test_points_in_polygon_matches_scalar():
    rng = np.random.default_rng(3)
    pts = rng.uniform(-0.2, 1.2, size=(500, 2))
    mask = points_in_polygon(pts, HOLED_SQUARE)
    for (x, y), m in zip(pts, mask):
        assert m == point_in_polygon(Point(x, y), HOLED_SQUARE)


def test_disk_polygon_area_analytic():
    assert disk_polygon_area(Disk(Point(0.5, 0.5), 2.0), UNIT_SQUARE) == pytest.approx(1.0, abs=1e-12)
    assert disk_polygon_area(Disk(Point(0.5, 0.5), 0.25), UNIT_SQUARE) == pytest.approx(math.pi / 16, abs=1e-12)
    assert disk_polygon_area(Disk(Point(0.0, 0.5), 0.25), UNIT_SQUARE) == pytest.approx(math.pi / 32, abs=1e-12)
    assert disk_polygon_area(Disk(Point(0.5, 0.5), 0.0), UNIT_SQUARE) == 0.0
    # disk sitting entirely inside the hole
    assert disk_polygon_area(Disk(Point(0.5, 0.5), 0.2), HOLED_SQUARE) == pytest.approx(0.0, abs=1e-12)
    # hole subtracts: big disk over holed square
    assert disk_polygon_area(Disk(Point(0.5, 0.5), 3.0), HOLED_SQUARE) == pytest.approx(0.75, abs=1e-12)


def test_disk_polygon_area_bounds_and_monotonicity():
    rng = np.random.default_rng(11)
    for _ in range(25):
        p = _rand_star(rng)
        c = Point(rng.uniform(-1, 1), rng.uniform(-1, 1))
        prev = 0.0
        for r in np.linspace(0.05, 2.5, 14):
            a = disk_polygon_area(Disk(c, r), p)
            assert -1e-12 <= a <= min(math.pi * r * r, polygon_area(p)) + 1e-9
            assert a >= prev - 1e-9
            prev = a


def test_disk_polygon_area_additive_over_split():
    left = PolygonWithHoles([(0, 0), (0.6, 0), (0.6, 1), (0, 1)])
    right = PolygonWithHoles([(0.6, 0), (1, 0), (1, 1), (0.6, 1)])
    rng = np.random.default_rng(5)
    for _ in range(20):
        d = Disk(Point(rng.uniform(0, 1), rng.uniform(0, 1)), rng.uniform(0.1, 1.0))
        whole = disk_polygon_area(d, UNIT_SQUARE)
        parts = disk_polygon_area(d, left) + disk_polygon_area(d, right)
        assert parts == pytest.approx(whole, abs=1e-10)


def test_centroid_examples():
    assert centroid(UNIT_SQUARE) == pytest.approx((0.5, 0.5), abs=1e-12)
    tri = PolygonWithHoles([(0, 0), (3, 0), (0, 3)])
    assert centroid(tri) == pytest.approx((1.0, 1.0), abs=1e-12)
    L = PolygonWithHoles([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
    assert centroid(L) == pytest.approx((5 / 6, 5 / 6), abs=1e-12)


def test_centroid_zero_area_errors():
    with pytest.raises(ValueError):
        centroid(PolygonWithHoles([(0, 0), (1, 0), (2, 0), (1, 0)]))


def _cell_area(cell):
    parts = cell if isinstance(cell, tuple) else (cell,)
    return sum(polygon_area(p) for p in parts)


def test_clipped_voronoi_single_site():
    cells = clipped_voronoi([Point(0.3, 0.7)], UNIT_SQUARE)
    assert len(cells) == 1
    assert _cell_area(cells[0]) == pytest.approx(1.0, rel=1e-9)


def test_clipped_voronoi_two_sites():
    rect = PolygonWithHoles([(0, 0), (2, 0), (2, 1), (0, 1)])
    cells = clipped_voronoi([Point(0.5, 0.5), Point(1.5, 0.5)], rect)
    assert [_cell_area(c) for c in cells] == pytest.approx([1.0, 1.0], rel=1e-9)
    # cell i contains site i
    for cell, site in zip(cells, [Point(0.5, 0.5), Point(1.5, 0.5)]):
        parts = cell if isinstance(cell, tuple) else (cell,)
        assert any(point_in_polygon(site, p) for p in parts)


def test_clipped_voronoi_area_conservation_and_subset():
    rng = np.random.default_rng(23)
    comp = _rand_star(rng, n=14)
    sites = []
    while len(sites) < 5:
        q = Point(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if point_in_polygon(q, comp):
            sites.append(q)
    cells = clipped_voronoi(sites, comp)
    total = sum(_cell_area(c) for c in cells if c is not None)
    assert total == pytest.approx(polygon_area(comp), rel=1e-9)
    # subset evidence: random points drawn inside each cell lie in the component
    for site, cell in zip(sites, cells):
        parts = cell if isinstance(cell, tuple) else (cell,)
        assert any(point_in_polygon(site, p) for p in parts)
        for part in parts:
            c = centroid(part)
            if point_in_polygon(c, part):
                assert point_in_polygon(c, comp)


def test_clipped_voronoi_errors():
    with pytest.raises(ValueError):
        clipped_voronoi([Point(0.5, 0.5), Point(0.5, 0.5)], UNIT_SQUARE)
    with pytest.raises(ValueError):
        clipped_voronoi([Point(2.0, 2.0)], UNIT_SQUARE)


def test_disk_validation():
    with pytest.raises(ValueError):
        Disk(Point(0, 0), -1.0)
