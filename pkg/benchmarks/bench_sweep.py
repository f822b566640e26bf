"""Benchmark the disk-fit sweep: compiled extension vs pure-Python backend.

Usage:
    python3 benchmarks/bench_sweep.py [--sizes 100 200 400] [--repeats 3] [--seed 0]

Prints a table of wall times per backend and the speedup ratio, and
verifies the two backends return identical results on every instance.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from chorodisk.diskfit import WeightedPoint, available_backends, max_weight_smallest_disk
from chorodisk.geometry import Point


def make_instance(n: int, rng: np.random.Generator) -> list:
    pts = rng.uniform(-10.0, 10.0, size=(n, 2))
    # ~35% negative points, dyadic weights so both backends agree bit-for-bit
    w = np.where(rng.random(n) < 0.35, -1.0, 1.0) * rng.integers(1, 9, size=n) * 0.25
    return [WeightedPoint(Point(x, y), wi) for (x, y), wi in zip(pts, w)]


def run(backend: str, pts: list, repeats: int) -> tuple:
    best = float("inf")
    fit = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fit = max_weight_smallest_disk(pts, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, fit


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    if "compiled" not in backends:
        print("compiled extension not built; timing pure python only")

    rng = np.random.default_rng(args.seed)
    header = f"{'n':>6} {'pairs':>10}" + "".join(f" {b:>12}" for b in backends)
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    for n in args.sizes:
        pts = make_instance(n, rng)
        times = {}
        fits = {}
        for b in backends:
            times[b], fits[b] = run(b, pts, args.repeats)
        if len(backends) == 2:
            a, b = fits["compiled"], fits["python"]
            assert a.weight == b.weight and a.disk == b.disk, f"backend mismatch at n={n}"
        row = f"{n:>6} {n * (n - 1) // 2:>10}" + "".join(
            f" {times[b]:>11.4f}s" for b in backends
        )
        if len(backends) == 2:
            row += f" {times['python'] / times['compiled']:>8.2f}x"
        print(row)


if __name__ == "__main__":
    main()
