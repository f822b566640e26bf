"""chorodisk: summarize a two-class region map with one optimally placed disk."""

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
from chorodisk.mapmodel import (
    ClassDistance,
    ClassStats,
    Region,
    RegionMap,
    class_stats,
    classify_two,
    components,
    load_map,
)
from chorodisk.sampling import (
    Sample,
    SampleSpec,
    allocate_bins,
    grid_size_search,
    relax_voronoi,
    sample_grid,
    sample_map,
    sample_random,
)
from chorodisk.diskfit import (
    FitResult,
    WeightedPoint,
    assign_weights,
    available_backends,
    brute_force_oracle,
    max_weight_smallest_disk,
    pair_sweep,
    recount_weight,
)
from chorodisk.scoring import (
    ScoreReport,
    disk_score,
    normalize_score,
    relative_quality,
    symmetric_difference,
)
from chorodisk.svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "ClassDistance",
    "ClassStats",
    "Disk",
    "FitResult",
    "Point",
    "PolygonWithHoles",
    "Region",
    "RegionMap",
    "Sample",
    "SampleSpec",
    "ScoreReport",
    "WeightedPoint",
    "allocate_bins",
    "assign_weights",
    "available_backends",
    "bounding_box",
    "brute_force_oracle",
    "centroid",
    "class_stats",
    "classify_two",
    "clipped_voronoi",
    "components",
    "disk_polygon_area",
    "disk_score",
    "grid_size_search",
    "load_map",
    "max_weight_smallest_disk",
    "normalize_score",
    "pair_sweep",
    "point_in_polygon",
    "points_in_polygon",
    "polygon_area",
    "recount_weight",
    "relative_quality",
    "relax_voronoi",
    "render_svg",
    "sample_grid",
    "sample_map",
    "sample_random",
    "symmetric_difference",
    "triangulate",
]
