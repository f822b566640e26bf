"""Command-line surface: single disk fits and the strategy-comparison
experiment harness, with JSON/SVG/CSV artifacts.

Pipeline per run: load GeoJSON -> (classify) -> sample -> weight ->
max-weight smallest disk -> exact polygon score. All artifacts are
reproducible bit-for-bit from (input, config, seed) except timing fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from chorodisk.diskfit import assign_weights, max_weight_smallest_disk
from chorodisk.mapmodel import RegionMap, class_stats, load_map
from chorodisk.sampling import Sample, SampleSpec, sample_map
from chorodisk.scoring import disk_score, normalize_score, relative_quality
from chorodisk.svg import render_svg

CLI_STRATEGIES = {
    "random": "random",
    "voronoi": "voronoi",
    "grid-square": "grid_square",
    "grid-hex": "grid_hex",
}


@dataclass(frozen=True)
class FitRunConfig:
    input_path: str
    spec: SampleSpec
    target_class: int = 1
    class_field: Optional[str] = None
    value_field: Optional[str] = None
    alpha: object = "auto"
    out_json: Optional[str] = None
    out_svg: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if (self.class_field is None) == (self.value_field is None):
            raise ValueError("give exactly one of class_field / value_field")


@dataclass(frozen=True)
class ExperimentConfig:
    inputs: tuple
    strategies: tuple = ("random", "voronoi", "grid_square", "grid_hex")
    scopes: tuple = ("local", "global")
    sample_counts: tuple = tuple(range(100, 1001, 100))
    seeds: tuple = (0,)
    target_classes: tuple = (1, 2)
    class_field: Optional[str] = "class"
    value_field: Optional[str] = None
    voronoi_iterations: int = 25
    reference_spec: Optional[SampleSpec] = field(
        default_factory=lambda: SampleSpec("voronoi", "local", 10000, 25, 0)
    )
    workers: int = 1

    def __post_init__(self):
        for name in ("inputs", "strategies", "scopes", "sample_counts", "seeds",
                     "target_classes"):
            if not getattr(self, name):
                raise ValueError(f"experiment config: {name} must be non-empty")


def _fit_once(region_map: RegionMap, spec: SampleSpec, target_class: int,
              alpha, workers: int):
    """sample -> weights -> fit -> exact score, with stage timings."""
    stats = class_stats(region_map, target_class, alpha)
    t0 = time.perf_counter()
    sample = sample_map(region_map, spec)
    t_sample = time.perf_counter() - t0
    weighted = assign_weights(sample, region_map, target_class, stats)
    t0 = time.perf_counter()
    fit = max_weight_smallest_disk(weighted, workers=workers)
    t_fit = time.perf_counter() - t0
    t0 = time.perf_counter()
    report = disk_score(region_map, fit.disk, target_class, stats)
    t_score = time.perf_counter() - t0
    timings = {
        "sample_ms": 1000.0 * t_sample,
        "fit_ms": 1000.0 * t_fit,
        "score_ms": 1000.0 * t_score,
    }
    return sample, weighted, fit, report, stats, timings


def run_fit(config: FitRunConfig) -> dict:
    """Execute one fit; write JSON/SVG artifacts if requested."""
    with open(config.input_path, "rb") as fh:
        data = fh.read()
    region_map = load_map(data, class_field=config.class_field or "class",
                          value_field=config.value_field)
    sample, weighted, fit, report, stats, timings = _fit_once(
        region_map, config.spec, config.target_class, config.alpha, config.workers
    )
    result = {
        "disk": {
            "cx": fit.disk.center.x,
            "cy": fit.disk.center.y,
            "r": fit.disk.radius,
        },
        "raw_score": report.raw_score,
        "normalized_score": report.normalized,
        "alpha": stats.alpha,
        "target_class": config.target_class,
        "degenerate": fit.degenerate,
        "sample": {
            "strategy": config.spec.strategy,
            "scope": config.spec.scope,
            "n": config.spec.n_target,
            "n_actual": len(sample.points),
            "seed": config.spec.seed,
            "iterations": config.spec.voronoi_iterations,
        },
        "timings_ms": timings,
    }
    if config.out_json:
        with open(config.out_json, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if config.out_svg:
        doc = render_svg(region_map, fit.disk, sample,
                         [w.weight for w in weighted])
        with open(config.out_svg, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return result


CSV_FIELDS = [
    "map", "target_class", "strategy", "scope", "n_requested", "n_actual",
    "seed", "raw_score", "normalized_score", "relative_quality",
    "fit_ms", "sample_ms", "status",
]


def run_experiment(config: ExperimentConfig, out_csv: str) -> list:
    """Run the full grid of (map, class, strategy, scope, n, seed) fits plus
    one reference run per (map, class); emit one CSV row per run.

    relative_quality divides each raw score by the best raw score in its
    (map, class) group, reference included. Per-run failures become rows
    with a non-ok status; the harness keeps going.
    """
    rows = []
    for path in config.inputs:
        with open(path, "rb") as fh:
            data = fh.read()
        region_map = load_map(data, class_field=config.class_field or "class",
                              value_field=config.value_field)
        for target in config.target_classes:
            group = []

            def add_run(spec: SampleSpec, requested: int, seed: int):
                row = {
                    "map": path,
                    "target_class": target,
                    "strategy": spec.strategy,
                    "scope": spec.scope,
                    "n_requested": requested,
                    "seed": seed,
                    "n_actual": "",
                    "raw_score": "",
                    "normalized_score": "",
                    "relative_quality": "",
                    "fit_ms": "",
                    "sample_ms": "",
                    "status": "ok",
                }
                try:
                    sample, _, fit, report, stats, timings = _fit_once(
                        region_map, spec, target, "auto", config.workers
                    )
                    row.update(
                        n_actual=len(sample.points),
                        raw_score=repr(report.raw_score),
                        normalized_score=repr(report.normalized),
                        fit_ms=f"{timings['fit_ms']:.3f}",
                        sample_ms=f"{timings['sample_ms']:.3f}",
                    )
                    group.append((row, report.raw_score))
                except Exception as exc:  # recorded, not fatal
                    row["status"] = f"error:{type(exc).__name__}:{exc}"
                    group.append((row, None))

            for strategy in config.strategies:
                for scope in config.scopes:
                    for n in config.sample_counts:
                        for seed in config.seeds:
                            add_run(
                                SampleSpec(strategy, scope, n,
                                           config.voronoi_iterations, seed),
                                n, seed,
                            )
            if config.reference_spec is not None:
                add_run(config.reference_spec, config.reference_spec.n_target,
                        config.reference_spec.seed)

            scores = [s for _, s in group if s is not None]
            best = max(scores) if scores else 0.0
            for row, score in group:
                if score is not None and best > 0.0:
                    row["relative_quality"] = repr(relative_quality(score, best))
                rows.append(row)

    with open(out_csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    return rows


def _experiment_config_from_file(path: str) -> ExperimentConfig:
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".json"):
        obj = json.loads(raw.decode("utf-8"))
    else:
        obj = tomllib.loads(raw.decode("utf-8"))
    ref = obj.pop("reference", None)
    kwargs = {}
    for key in ("inputs", "strategies", "scopes", "sample_counts", "seeds",
                "target_classes"):
        if key in obj:
            kwargs[key] = tuple(obj[key])
    if "strategies" in kwargs:
        # config files may use either the command-line spelling (grid-hex)
        # or the internal one (grid_hex)
        kwargs["strategies"] = tuple(
            CLI_STRATEGIES.get(s, s) for s in kwargs["strategies"])
    for key in ("class_field", "value_field", "voronoi_iterations", "workers"):
        if key in obj:
            kwargs[key] = obj[key]
    if ref is not None:
        if ref is False or ref == {} or ref.get("enabled", True) is False:
            kwargs["reference_spec"] = None
        else:
            ref_strategy = ref.get("strategy", "voronoi")
            kwargs["reference_spec"] = SampleSpec(
                CLI_STRATEGIES.get(ref_strategy, ref_strategy),
                ref.get("scope", "local"),
                int(ref.get("n", 10000)),
                int(ref.get("iterations", 25)),
                int(ref.get("seed", 0)),
            )
    return ExperimentConfig(**kwargs)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chorodisk",
                                 description="summarize a two-class region map "
                                             "with one optimally placed disk")
    sub = ap.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit a disk to one map")
    fit.add_argument("--input", required=True)
    group = fit.add_mutually_exclusive_group(required=True)
    group.add_argument("--class-field")
    group.add_argument("--value-field")
    fit.add_argument("--target-class", type=int, choices=(1, 2), default=1)
    fit.add_argument("--strategy", choices=sorted(CLI_STRATEGIES), default="random")
    fit.add_argument("--scope", choices=("local", "global"), default="local")
    fit.add_argument("--samples", type=int, required=True)
    fit.add_argument("--iterations", type=int, default=25)
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--alpha", default="auto")
    fit.add_argument("--workers", type=int, default=1)
    fit.add_argument("--out-json")
    fit.add_argument("--out-svg")

    exp = sub.add_parser("experiment", help="run the strategy-comparison harness")
    exp.add_argument("--config", required=True)
    exp.add_argument("--out-csv", required=True)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "fit":
            alpha = args.alpha if args.alpha == "auto" else float(args.alpha)
            config = FitRunConfig(
                input_path=args.input,
                spec=SampleSpec(CLI_STRATEGIES[args.strategy], args.scope,
                                args.samples, args.iterations, args.seed),
                target_class=args.target_class,
                class_field=args.class_field,
                value_field=args.value_field,
                alpha=alpha,
                out_json=args.out_json,
                out_svg=args.out_svg,
                workers=args.workers,
            )
            result = run_fit(config)
            if not config.out_json:
                json.dump(result, sys.stdout, indent=2, sort_keys=True)
                sys.stdout.write("\n")
        else:
            config = _experiment_config_from_file(args.config)
            run_experiment(config, args.out_csv)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
