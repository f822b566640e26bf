"""Maximum-weight smallest disk over weighted points.

The optimal disk (when it exists with positive weight) has two
positive-weight points on its boundary, so the solver sweeps the bisector
of every such pair, tracking how the covered weight changes as points
enter and leave the disk — O(n^3 log n) over all pairs. Degenerate optima
fall back to the best radius-0 disk at a positive point, or the empty
disk with weight 0.

Two interchangeable kernels exist: a compiled extension (used when the
build produced it) and a pure-numpy fallback; `backend` selects
explicitly. Pair sweeps are independent, so chunks may run on worker
threads; the reduction key is a total order, which makes the parallel
result identical to the sequential one.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from chorodisk import _sweep_py
from chorodisk.geometry import Disk, Point
from chorodisk.mapmodel import ClassStats, RegionMap, components
from chorodisk.sampling import Sample

try:
    from chorodisk import _sweep as _sweep_c
except ImportError:  # built without the extension; numpy path only
    _sweep_c = None

DEFAULT_BACKEND = "compiled" if _sweep_c is not None else "python"


@dataclass(frozen=True)
class WeightedPoint:
    position: Point
    weight: float

    def __post_init__(self):
        if not math.isfinite(self.weight):
            raise ValueError("weight must be finite")


@dataclass(frozen=True)
class FitResult:
    disk: Disk
    weight: float
    support: tuple  # (i, j) boundary pair, (i,) point disk, or () empty disk
    degenerate: bool


def available_backends() -> tuple:
    return ("compiled", "python") if _sweep_c is not None else ("python",)


def _get_backend(backend: Optional[str]):
    name = backend or DEFAULT_BACKEND
    if name == "compiled":
        if _sweep_c is None:
            raise ValueError("compiled backend not available in this build")
        return name, _sweep_c.best_over_pairs
    if name == "python":
        return name, _sweep_py.best_over_pairs
    raise ValueError(f"unknown backend {name!r}")


def assign_weights(
    sample: Sample, region_map: RegionMap, target_class: int, stats: ClassStats
) -> list:
    """Weight each sample point by its component's class: alpha for the
    target class, alpha - 1 otherwise. Uses the component tag recorded at
    sampling time; no geometric re-query."""
    comps = components(region_map)
    alpha = stats.alpha
    out = []
    for pt, ci in zip(sample.points, sample.origin_component):
        if ci is None or not 0 <= ci < len(comps):
            raise ValueError(f"sample point {pt} has no valid component tag")
        _, class_id = comps[ci]
        w = alpha if class_id == target_class else alpha - 1.0
        out.append(WeightedPoint(Point(float(pt[0]), float(pt[1])), w))
    return out


def _point_arrays(points: Sequence[WeightedPoint]):
    P = np.asarray([(wp.position[0], wp.position[1]) for wp in points], dtype=float)
    W = np.asarray([wp.weight for wp in points], dtype=float)
    return P.reshape(-1, 2), W


def pair_sweep(i: int, j: int, points: Sequence[WeightedPoint]) -> Tuple[float, float]:
    """Sweep the bisector of positive points i, j.

    Returns (best_t, best_weight) with t the signed arclength of the disk
    center from the pq midpoint; among maximum-weight positions, t is the
    feasible value closest to 0 (the smallest disk).
    """
    P, W = _point_arrays(points)
    if not (W[i] > 0.0 and W[j] > 0.0):
        raise ValueError("pair_sweep requires positive-weight endpoints")
    res = _sweep_py.pair_best(P, W, i, j)
    if res is None:
        raise ValueError("pair_sweep requires distinct positions")
    w, tau, L2, mx, my, rx, ry = res
    return tau * math.sqrt(L2), w


def _coincident_weight_sums(P: np.ndarray, W: np.ndarray) -> np.ndarray:
    """For each point, the total weight of all points at its exact position."""
    sums = {}
    for k in range(len(P)):
        key = (P[k, 0], P[k, 1])
        sums[key] = sums.get(key, 0.0) + W[k]
    return np.asarray([sums[(P[k, 0], P[k, 1])] for k in range(len(P))])


def _empty_disk(P: np.ndarray) -> Disk:
    # a located but vacuous disk: radius 0 strictly outside the point bbox
    if len(P):
        return Disk(Point(float(P[:, 0].min()) - 1.0, float(P[:, 1].min()) - 1.0), 0.0)
    return Disk(Point(0.0, 0.0), 0.0)


def max_weight_smallest_disk(
    points: Sequence[WeightedPoint],
    workers: int = 1,
    backend: Optional[str] = None,
) -> FitResult:
    """Maximum-weight disk, smallest among maximizers.

    Candidates: every bisector sweep over pairs of distinct positive
    points, every radius-0 disk at a positive point (weight = sum of
    exactly-coincident weights), and the empty disk (weight 0). Ties break
    by smaller radius, then lexicographic center, then pair order. The
    result weight is never negative.
    """
    if not points:
        raise ValueError("need at least one point")
    _, scan = _get_backend(backend)
    P, W = _point_arrays(points)

    pos = np.flatnonzero(W > 0.0).astype(np.int64)

    # singleton candidates: zero-radius disks at positive points
    best = None  # (key, FitResult)
    if len(pos):
        co = _coincident_weight_sums(P, W)
        for k in pos:
            w = float(co[k])
            cand = FitResult(
                Disk(Point(float(P[k, 0]), float(P[k, 1])), 0.0), w, (int(k),), True
            )
            key = (-w, 0.0, P[k, 0], P[k, 1], -1)
            if best is None or key < best[0]:
                best = (key, cand)

    if len(pos) >= 2:
        pa, pb = np.triu_indices(len(pos), k=1)
        pa = pa.astype(np.int64)
        pb = pb.astype(np.int64)
        npair = len(pa)
        workers = max(1, int(workers))
        chunks = []
        if workers == 1 or npair < 64:
            chunks.append((0, npair))
        else:
            step = (npair + workers - 1) // workers
            chunks = [(lo, min(lo + step, npair)) for lo in range(0, npair, step)]

        def run(lo_hi):
            lo, hi = lo_hi
            return scan(P, W, pos, pa[lo:hi], pb[lo:hi], lo)

        if len(chunks) == 1:
            results = [run(chunks[0])]
        else:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(run, chunks))

        for res in results:
            if res is None:
                continue
            w, r, cx, cy, kflat = res
            key = (-w, r, cx, cy, int(kflat))
            if best is None or key < best[0]:
                i = int(pos[pa[kflat]])
                j = int(pos[pb[kflat]])
                cand = FitResult(Disk(Point(cx, cy), r), float(w), (i, j), False)
                best = (key, cand)

    if best is None or best[1].weight <= 0.0:
        return FitResult(_empty_disk(P), 0.0, (), True)
    return best[1]


def recount_weight(points: Sequence[WeightedPoint], disk: Disk, rtol: float = 1e-9) -> float:
    """Directly re-sum weights inside the closed disk.

    Support points sit on the boundary up to round-off, so membership gets
    a relative slack of rtol; this is the verification counterpart of the
    solver's combinatorial accounting.
    """
    if not points:
        return 0.0
    P, W = _point_arrays(points)
    dx = P[:, 0] - disk.center.x
    dy = P[:, 1] - disk.center.y
    r_eff = disk.radius + rtol * (1.0 + disk.radius)
    inside = dx * dx + dy * dy <= r_eff * r_eff
    return float(W[inside].sum())


# ---------------------------------------------------------------------------
# exact brute-force oracle (testing)
# ---------------------------------------------------------------------------


def _oracle_candidates(events: list) -> list:
    """Exact candidate parameters as (num, den > 0) pairs: every event,
    the midpoint of each gap between neighbors, one step beyond each end,
    and 0 — together these cover every interval the weight is constant on.

    `events` must be sorted ascending by value and deduplicated.
    """
    cands = [(0, 1)]
    if not events:
        return cands
    cands.extend(events)
    for (n1, d1), (n2, d2) in zip(events[:-1], events[1:]):
        cands.append((n1 * d2 + n2 * d1, 2 * d1 * d2))
    n1, d1 = events[0]
    cands.append((n1 - d1, d1))
    n2, d2 = events[-1]
    cands.append((n2 + d2, d2))
    return cands


def brute_force_oracle(points: Sequence[WeightedPoint]) -> float:
    """Exact maximum weight by exhaustive candidate enumeration.

    Event parameters and containment tests use exact rational arithmetic
    (plain integers when every coordinate is integral), so the result is
    exact for any float input; intended for small n.
    """
    if not points:
        raise ValueError("need at least one point")
    W = [wp.weight for wp in points]
    n = len(points)
    integral = all(
        float(wp.position[0]).is_integer() and float(wp.position[1]).is_integer()
        for wp in points
    )
    if integral:
        P = [(int(wp.position[0]), int(wp.position[1])) for wp in points]
    else:
        P = [(Fraction(wp.position[0]), Fraction(wp.position[1])) for wp in points]

    best = 0.0  # the empty disk

    # radius-0 disks at positive points
    for k in range(n):
        if W[k] > 0.0:
            w = math.fsum(W[m] for m in range(n) if P[m] == P[k])
            best = max(best, w)

    for i in range(n):
        if not W[i] > 0.0:
            continue
        for j in range(i + 1, n):
            if not W[j] > 0.0 or P[i] == P[j]:
                continue
            px, py = P[i]
            qx, qy = P[j]
            rx = -(qy - py)
            ry = qx - px
            a = []
            b = []
            for x, y in P:
                a.append(2 * (rx * (px - x) + ry * (py - y)))
                b.append(-((x - px) * (x - qx) + (y - py) * (y - qy)))
            events = sorted({Fraction(b[k], a[k]) for k in range(n) if a[k] != 0})
            events = [(f.numerator, f.denominator) for f in events]
            for num, den in _oracle_candidates(events):
                w = math.fsum(W[k] for k in range(n) if a[k] * num <= b[k] * den)
                best = max(best, w)
    return best
