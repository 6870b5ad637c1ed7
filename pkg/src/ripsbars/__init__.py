"""Vietoris–Rips persistent homology barcodes under interchangeable metrics.

The pipeline: a distance matrix (any pseudometric) → incremental flag-complex
filtration over its sorted thresholds → Z/2 boundary-matrix reduction →
barcode → per-dimension lifespan statistics.  Two data domains ship built in:
planar point clouds under Euclidean/taxicab/supremum metrics, and
non-transitive dice under graph-derived distances.
"""

from .cloud import Region, four_hole_disk, sample_region
from .dice import (
    BeatingGraph,
    DiceSpace,
    beating_probability,
    beats,
    build_beating_graph,
    enumerate_dice,
    longest_cycle,
    non_transitive_subset,
)
from .filtration import Filtration, Simplex, build_filtration, critical_thresholds
from .metrics import (
    DistanceMatrix,
    Point2,
    build_distance_matrix,
    euclidean,
    normalize,
    supremum,
    taxicab,
    validate_pseudometric,
)
from .persistence import (
    Bar,
    Barcode,
    barcode,
    betti_numbers,
    extract_pairs,
    reduce_matrix,
    total_boundary_matrix,
)
from .stats import BarStats, bar_stats, compare

__version__ = "0.1.0"

__all__ = [
    "Bar",
    "Barcode",
    "BarStats",
    "BeatingGraph",
    "DiceSpace",
    "DistanceMatrix",
    "Filtration",
    "Point2",
    "Region",
    "Simplex",
    "bar_stats",
    "barcode",
    "beating_probability",
    "beats",
    "betti_numbers",
    "build_beating_graph",
    "build_distance_matrix",
    "build_filtration",
    "compare",
    "critical_thresholds",
    "enumerate_dice",
    "euclidean",
    "extract_pairs",
    "four_hole_disk",
    "longest_cycle",
    "non_transitive_subset",
    "normalize",
    "reduce_matrix",
    "sample_region",
    "supremum",
    "taxicab",
    "total_boundary_matrix",
    "validate_pseudometric",
    "__version__",
]
