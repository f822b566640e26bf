"""Point sampling of region maps.

Four strategies (random, voronoi-relaxed random, square grid, hex grid),
each in local scope (per component, with largest-remainder allocation of
the sample budget) or global scope (one pass over the whole map). Grid
strategies hit a target count via binary search on the cell size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from shapely.ops import nearest_points

from chorodisk.geometry import (
    Point,
    PolygonLike,
    _clipped_voronoi_shapely,
    _parts,
    _to_shapely,
    bounding_box,
    point_in_polygon,
    points_in_polygon,
    polygon_area,
    triangulate,
)
from chorodisk.mapmodel import RegionMap, components

STRATEGIES = ("random", "voronoi", "grid_square", "grid_hex")
SCOPES = ("local", "global")


@dataclass(frozen=True)
class SampleSpec:
    strategy: str
    scope: str
    n_target: int
    voronoi_iterations: int = 25
    seed: int = 0

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.scope not in SCOPES:
            raise ValueError(f"scope must be one of {SCOPES}, got {self.scope!r}")
        if self.n_target < 1:
            raise ValueError("n_target must be >= 1")
        if self.voronoi_iterations < 0:
            raise ValueError("voronoi_iterations must be >= 0")


@dataclass(frozen=True)
class BinAllocation:
    counts: tuple
    ideals: tuple


@dataclass(frozen=True)
class GridParams:
    cell_size: float
    kind: str = "square"

    def __post_init__(self):
        if not self.cell_size > 0.0:
            raise ValueError("cell_size must be > 0")
        if self.kind not in ("square", "hex"):
            raise ValueError(f"kind must be 'square' or 'hex', got {self.kind!r}")


@dataclass(frozen=True)
class GridSearchResult:
    params: GridParams
    count: int
    exact: bool


@dataclass(frozen=True)
class Sample:
    points: tuple
    origin_component: tuple

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(-1, 2)


def allocate_bins(n: int, areas: Sequence[float], total_area: float) -> BinAllocation:
    """Largest-remainder split of n samples across bins, proportional to area.

    Each bin gets floor(p_i) with p_i = n * area_i / total_area; leftover
    samples go to the largest fractional parts (ties: larger area first,
    then input order). Guarantees sum(counts) == n and |count_i - p_i| < 1.
    """
    areas = [float(a) for a in areas]
    if n < 0:
        raise ValueError("n must be >= 0")
    if any(a <= 0.0 for a in areas):
        raise ValueError("all bin areas must be > 0")
    if not math.isclose(sum(areas), total_area, rel_tol=1e-9):
        raise ValueError("total_area does not match the sum of areas")
    ideals = [n * a / total_area for a in areas]
    counts = [int(math.floor(p)) for p in ideals]
    leftover = n - sum(counts)
    order = sorted(
        range(len(areas)),
        key=lambda i: (-(ideals[i] - math.floor(ideals[i])), -areas[i], i),
    )
    for i in order[:leftover]:
        counts[i] += 1
    return BinAllocation(tuple(counts), tuple(ideals))


def _triangle_pool(p: PolygonLike):
    """Triangulation of every part, flattened, with the owning part index."""
    tris = []
    owners = []
    for pi, part in enumerate(_parts(p)):
        if polygon_area(part) <= 0.0:
            continue
        for t in triangulate(part):
            tris.append(t)
            owners.append(pi)
    if not tris:
        raise ValueError("cannot sample a zero-area polygon")
    tri_arr = np.asarray(tris, dtype=float)  # (m, 3, 2)
    a = tri_arr[:, 0]
    b = tri_arr[:, 1]
    c = tri_arr[:, 2]
    areas = 0.5 * np.abs(
        (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    )
    return tri_arr, np.asarray(owners), areas / areas.sum()


def _sample_random_tagged(p: PolygonLike, k: int, rng) -> tuple:
    """k uniform points over p plus the part index each point landed in."""
    if k == 0:
        return np.empty((0, 2)), np.empty(0, dtype=int)
    tri_arr, owners, probs = _triangle_pool(p)
    idx = rng.choice(len(tri_arr), size=k, p=probs)
    u = rng.random(k)
    v = rng.random(k)
    su = np.sqrt(u)
    a = tri_arr[idx, 0]
    b = tri_arr[idx, 1]
    c = tri_arr[idx, 2]
    pts = (1.0 - su)[:, None] * a + (su * (1.0 - v))[:, None] * b + (su * v)[:, None] * c
    # Guard against points nudged across the boundary by round-off: redraw
    # the offending coordinates from the same stream (deterministic).
    for _ in range(100):
        bad = ~points_in_polygon(pts, p)
        if not bad.any():
            break
        m = int(bad.sum())
        idx2 = rng.choice(len(tri_arr), size=m, p=probs)
        u2 = rng.random(m)
        v2 = rng.random(m)
        su2 = np.sqrt(u2)
        pts[bad] = (
            (1.0 - su2)[:, None] * tri_arr[idx2, 0]
            + (su2 * (1.0 - v2))[:, None] * tri_arr[idx2, 1]
            + (su2 * v2)[:, None] * tri_arr[idx2, 2]
        )
        idx[bad] = idx2
    return pts, owners[idx]


def sample_random(p: PolygonLike, k: int, seed) -> list:
    """k i.i.d. uniform points in p: pick a triangle of a triangulation
    with probability proportional to its area, then a uniform point in it
    via (1-sqrt(u))A + sqrt(u)(1-v)B + sqrt(u)vC. Deterministic per seed.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > 0 and polygon_area(p) <= 0.0:
        raise ValueError("cannot sample a zero-area polygon")
    rng = np.random.default_rng(seed)
    pts, _ = _sample_random_tagged(p, k, rng)
    return [Point(float(x), float(y)) for x, y in pts]


def _nudge_inside(candidate, anchor, component) -> Point:
    """Halve toward a known-inside anchor until closed containment holds."""
    cx, cy = float(candidate[0]), float(candidate[1])
    ax, ay = float(anchor[0]), float(anchor[1])
    for _ in range(80):
        if point_in_polygon((cx, cy), component):
            return Point(cx, cy)
        cx = 0.5 * (cx + ax)
        cy = 0.5 * (cy + ay)
    return Point(ax, ay)


def relax_voronoi(points, component: PolygonLike, iterations: int, seed=0) -> list:
    """Lloyd relaxation cropped to the component.

    Each iteration: Voronoi cells of the points, cropped to the component;
    every point moves to its cell's centroid. A centroid that falls outside
    its (nonconvex) cell is replaced by the nearest point of the cell.
    iterations=0 returns the input unchanged. Exact duplicate points are
    jittered apart (seeded, 1e-9 of the bbox diagonal) before iterating.
    """
    pts = [Point(float(p[0]), float(p[1])) for p in points]
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    if not pts or iterations == 0:
        return pts
    inside = points_in_polygon(np.asarray(pts), component)
    if not inside.all():
        raise ValueError("relax_voronoi: input points must lie inside the component")

    x0, y0, x1, y1 = bounding_box(component)
    diag = math.hypot(x1 - x0, y1 - y0)
    rng = np.random.default_rng(seed)
    for _ in range(100):
        seen = {}
        dups = []
        for i, pt in enumerate(pts):
            key = (pt.x, pt.y)
            if key in seen:
                dups.append(i)
            else:
                seen[key] = i
        if not dups:
            break
        for i in dups:
            for _ in range(100):
                jit = rng.uniform(-1.0, 1.0, size=2) * 1e-9 * diag
                cand = (pts[i].x + jit[0], pts[i].y + jit[1])
                if point_in_polygon(cand, component):
                    pts[i] = Point(cand[0], cand[1])
                    break

    comp_shp = _to_shapely(component)
    for _ in range(iterations):
        arr = np.asarray(pts, dtype=float)
        cells = _clipped_voronoi_shapely(arr, component, comp_shp)
        moved = []
        for pt, cell in zip(pts, cells):
            if cell is None:
                moved.append(pt)  # degenerate point-cell: the site stays put
                continue
            cen = cell.centroid
            if not cell.intersects(cen):
                _, cen = nearest_points(cen, cell)
            moved.append(Point(float(cen.x), float(cen.y)))
        # round-off can land a centroid a hair outside; pull those back in
        ok = points_in_polygon(np.asarray(moved, dtype=float), component)
        if not ok.all():
            for k in np.flatnonzero(~ok):
                moved[k] = _nudge_inside(moved[k], pts[k], component)
        pts = moved
    return pts


def sample_grid(p: PolygonLike, g: GridParams) -> list:
    """Centers of a regular grid aligned to the bbox bottom-left, filtered
    by closed containment in p.

    Square: centers at (x_min + (i+1/2)s, y_min + (j+1/2)s). Hex (side s,
    two vertical sides): centers at (x_min + sqrt(3)s(i + (j mod 2)/2),
    y_min + (3s/2)j).
    """
    s = g.cell_size
    x0, y0, x1, y1 = bounding_box(p)
    w = x1 - x0
    h = y1 - y0
    eps = 1e-9
    if g.kind == "square":
        nx = int(math.floor(w / s - 0.5 + eps)) + 1
        ny = int(math.floor(h / s - 0.5 + eps)) + 1
        if nx <= 0 or ny <= 0:
            return []
        xs = x0 + (np.arange(nx) + 0.5) * s
        ys = y0 + (np.arange(ny) + 0.5) * s
        gx, gy = np.meshgrid(xs, ys)
        pts = np.column_stack([gx.ravel(), gy.ravel()])
    else:
        pitch_x = math.sqrt(3.0) * s
        pitch_y = 1.5 * s
        nrows = int(math.floor(h / pitch_y + eps)) + 1
        rows = []
        for j in range(nrows):
            off = 0.5 * (j % 2)
            ni = int(math.floor(w / pitch_x - off + eps)) + 1
            if ni <= 0:
                continue
            xs = x0 + pitch_x * (np.arange(ni) + off)
            rows.append(np.column_stack([xs, np.full(ni, y0 + pitch_y * j)]))
        if not rows:
            return []
        pts = np.vstack(rows)
    keep = points_in_polygon(pts, p)
    return [Point(float(x), float(y)) for x, y in pts[keep]]


def grid_size_search(domain: PolygonLike, kind: str, n_target: int) -> GridSearchResult:
    """Binary search on the grid cell size for a target point count.

    Searches s in [diag/(4*n_target), diag] (diag = bbox diagonal of the
    domain) for up to 200 iterations, counting with the same alignment rule
    as sample_grid. Returns the largest tested s giving exactly n_target
    points; if none is found, the closest count seen is returned with
    exact=False.
    """
    if n_target < 1:
        raise ValueError("n_target must be >= 1")
    parts = _parts(domain)
    x0, y0, x1, y1 = bounding_box(parts)
    diag = math.hypot(x1 - x0, y1 - y0)
    lo = diag / (4.0 * n_target)
    hi = diag

    def count(s: float) -> int:
        return len(sample_grid(parts, GridParams(s, kind)))

    best_exact = None
    best_close = None  # (|count - n_target|, -s, count, s)

    def note(s: float, c: int):
        nonlocal best_exact, best_close
        if c == n_target and (best_exact is None or s > best_exact):
            best_exact = s
        key = (abs(c - n_target), -s)
        if best_close is None or key < best_close[0]:
            best_close = (key, c, s)

    # hi is cheap to evaluate (few cells); lo would enumerate ~(4*n_target)^2
    # grid points and can never be the preferred (coarsest) answer, so the
    # search only tightens toward it as needed.
    note(hi, count(hi))
    for _ in range(200):
        if hi - lo <= 1e-15 * diag:
            break
        mid = 0.5 * (lo + hi)
        c = count(mid)
        note(mid, c)
        if c < n_target:
            hi = mid
        else:
            # exact hits keep searching upward for a coarser exact grid
            lo = mid
    if best_exact is not None:
        return GridSearchResult(GridParams(best_exact, kind), n_target, True)
    _, c, s = best_close
    return GridSearchResult(GridParams(s, kind), c, False)


def _grid_points_tagged(parts: Sequence, g: GridParams) -> tuple:
    pts = sample_grid(parts, g)
    if not pts:
        return [], []
    arr = np.asarray(pts, dtype=float)
    owner = np.full(len(arr), -1, dtype=int)
    for pi, part in enumerate(parts):
        undecided = owner < 0
        if not undecided.any():
            break
        hit = points_in_polygon(arr[undecided], part)
        idx = np.flatnonzero(undecided)[hit]
        owner[idx] = pi
    return pts, list(owner)


def sample_map(region_map: RegionMap, spec: SampleSpec) -> Sample:
    """Sample a region map according to a SampleSpec.

    Local scope allocates the budget across components by area (largest
    remainder) and runs the strategy per component; global scope runs it
    once over all components together. Voronoi relaxation always runs per
    component. Every point is tagged with the index of its component (in
    components(region_map) order).
    """
    comps = components(region_map)
    parts = [c for c, _ in comps]
    live = [i for i, part in enumerate(parts) if polygon_area(part) > 0.0]
    if not live:
        raise ValueError("map has no positive-area components")
    seeds = np.random.SeedSequence(spec.seed).spawn(len(parts) + 1)

    points = []
    origins = []

    def run_component(ci: int, k: int, grid_kind=None):
        """Sample k points (or a grid hit) inside component ci."""
        part = parts[ci]
        rng = np.random.default_rng(seeds[ci])
        if spec.strategy in ("random", "voronoi"):
            pts, _ = _sample_random_tagged(part, k, rng)
            pts = [Point(float(x), float(y)) for x, y in pts]
            if spec.strategy == "voronoi" and pts:
                jseed = int(rng.integers(0, 2**63))
                pts = relax_voronoi(pts, part, spec.voronoi_iterations, seed=jseed)
        else:
            res = grid_size_search(part, grid_kind, k)
            pts = sample_grid(part, res.params)
        points.extend(pts)
        origins.extend([ci] * len(pts))

    grid_kind = {"grid_square": "square", "grid_hex": "hex"}.get(spec.strategy)

    if spec.scope == "local":
        areas = [polygon_area(parts[i]) for i in live]
        alloc = allocate_bins(spec.n_target, areas, sum(areas))
        for ci, k in zip(live, alloc.counts):
            if k > 0:
                run_component(ci, k, grid_kind)
    else:
        live_parts = [parts[i] for i in live]
        if spec.strategy in ("random", "voronoi"):
            rng = np.random.default_rng(seeds[-1])
            pts, owner_local = _sample_random_tagged(live_parts, spec.n_target, rng)
            by_comp = {}
            for (x, y), oi in zip(pts, owner_local):
                by_comp.setdefault(int(oi), []).append(Point(float(x), float(y)))
            for oi in sorted(by_comp):
                ci = live[oi]
                group = by_comp[oi]
                if spec.strategy == "voronoi":
                    jseed = int(np.random.default_rng(seeds[ci]).integers(0, 2**63))
                    group = relax_voronoi(group, parts[ci], spec.voronoi_iterations, seed=jseed)
                points.extend(group)
                origins.extend([ci] * len(group))
        else:
            res = grid_size_search(live_parts, grid_kind, spec.n_target)
            pts, owner_local = _grid_points_tagged(live_parts, res.params)
            points.extend(pts)
            origins.extend(live[oi] for oi in owner_local)

    return Sample(tuple(points), tuple(origins))
