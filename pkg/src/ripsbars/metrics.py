"""Planar metrics, distance matrices, and pseudometric validation.

Distances are stored as float64.  A matrix may be a pseudometric: distance 0
between distinct points is legal everywhere downstream, only negativity and
asymmetry are hard errors.  The triangle inequality is checked with a small
tolerance to absorb floating-point rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import fileio
from .fileio import ParseError, fmt

#: Default slack for triangle-inequality checks on float-derived matrices.
#: Use 0.0 for matrices assembled from exact integer/rational arithmetic.
TRIANGLE_TOL = 1e-9


@dataclass(frozen=True)
class Point2:
    """A point in the plane."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate: ({self.x}, {self.y})")


def euclidean(a: Point2, b: Point2) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def taxicab(a: Point2, b: Point2) -> float:
    return abs(a.x - b.x) + abs(a.y - b.y)


def supremum(a: Point2, b: Point2) -> float:
    return max(abs(a.x - b.x), abs(a.y - b.y))


PLANAR_METRICS: Dict[str, Callable[[Point2, Point2], float]] = {
    "euclidean": euclidean,
    "taxicab": taxicab,
    "supremum": supremum,
}


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative matrix of pairwise distances.

    ``entries`` is an (n, n) float64 array.  ``labels``, when present, names
    each point (used by the dice domain, where points are dice).
    """

    entries: np.ndarray
    labels: Optional[Tuple[str, ...]] = None
    metric: str = ""

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise ValueError("distance matrix must have at least one point")
        if not np.isfinite(arr).all():
            raise ValueError("distance matrix contains non-finite entries")
        object.__setattr__(self, "entries", arr)
        if self.labels is not None and len(self.labels) != arr.shape[0]:
            raise ValueError(
                f"{len(self.labels)} labels for {arr.shape[0]} points"
            )

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def max_distance(self) -> float:
        return float(self.entries.max())


@dataclass(frozen=True)
class Violation:
    """A single failed pseudometric axiom with its witness indices."""

    axiom: str  # "nonnegativity" | "symmetry" | "zero-diagonal" | "triangle"
    witness: Tuple[int, ...]
    amount: float


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "pseudometric axioms hold"
        parts = [
            f"{v.axiom} at {v.witness} (by {v.amount:.3g})" for v in self.violations
        ]
        return "; ".join(parts)


def validate_pseudometric(m: DistanceMatrix, tol: float = TRIANGLE_TOL) -> ValidationReport:
    """Check nonnegativity, symmetry, zero diagonal, and triangle inequality.

    Violations are reported with witnesses rather than raised; distance 0
    between distinct points is not a violation (pseudometrics are allowed).
    """
    d = m.entries
    n = m.n
    report = ValidationReport()
    for i in range(n):
        if d[i, i] != 0.0:
            report.violations.append(Violation("zero-diagonal", (i,), float(d[i, i])))
    for i in range(n):
        for j in range(i + 1, n):
            if d[i, j] < 0.0 or d[j, i] < 0.0:
                report.violations.append(
                    Violation("nonnegativity", (i, j), float(min(d[i, j], d[j, i])))
                )
            gap = abs(d[i, j] - d[j, i])
            if gap > tol:
                report.violations.append(Violation("symmetry", (i, j), float(gap)))
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            # d[i,k] <= d[i,j] + d[j,k] + tol for every k
            slack = d[i, j] + d[j] + tol - d[i]
            for k in np.flatnonzero(slack < 0.0):
                report.violations.append(
                    Violation("triangle", (i, j, int(k)), float(-slack[k]))
                )
    return report


def build_distance_matrix(
    points: Sequence[Point2], metric: str | Callable[[Point2, Point2], float]
) -> DistanceMatrix:
    """Evaluate ``metric`` on every pair of points.

    ``metric`` is a name from :data:`PLANAR_METRICS` or any callable taking
    two points.  The result is exactly symmetric (each pair evaluated once).
    """
    if not points:
        raise ValueError("need at least one point")
    if isinstance(metric, str):
        try:
            fn = PLANAR_METRICS[metric]
        except KeyError:
            raise ValueError(
                f"unknown metric {metric!r}; choose from {sorted(PLANAR_METRICS)}"
            ) from None
        name = metric
    else:
        fn = metric
        name = getattr(metric, "__name__", "custom")
    n = len(points)
    d = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = fn(points[i], points[j])
    return DistanceMatrix(entries=d, metric=name)


def normalize(m: DistanceMatrix) -> DistanceMatrix:
    """Divide all entries by the maximum distance, mapping them into [0, 1].

    Rejects an all-zero matrix: there is no positive maximum to divide by.
    Monotone rescaling preserves the order of entries, hence the order of
    filtration thresholds.
    """
    top = m.max_distance()
    if top <= 0.0:
        raise ValueError("cannot normalize: no strictly positive distance")
    return DistanceMatrix(entries=m.entries / top, labels=m.labels, metric=m.metric)


def write_distance_csv(
    path: str, m: DistanceMatrix, config: Optional[Dict[str, Any]] = None
) -> None:
    """Write n lines of n comma-separated values, preceded by metadata.

    Point labels, when present, are recorded in a comment line so the matrix
    body stays purely numeric.
    """
    lines = fileio.metadata_lines(config)
    if m.metric:
        lines.append(f"# metric {m.metric}")
    if m.labels is not None:
        lines.append("# labels " + ",".join(m.labels))
    for row in m.entries:
        lines.append(",".join(fmt(v) for v in row))
    fileio.write_text(path, lines)


def read_distance_csv(path: str, tol: float = TRIANGLE_TOL) -> DistanceMatrix:
    """Read a distance matrix, validating shape and symmetry within ``tol``."""
    lines = fileio.read_lines(path)
    labels: Optional[Tuple[str, ...]] = None
    metric = ""
    for raw in lines:
        text = raw.strip()
        if not text.startswith("#"):
            break
        body = text.lstrip("#").strip()
        if body.startswith("labels "):
            labels = tuple(body[len("labels "):].split(","))
        elif body.startswith("metric "):
            metric = body[len("metric "):].strip()
    rows: List[List[float]] = []
    row_lines: List[int] = []
    for lineno, text in fileio.data_lines(lines):
        rows.append([fileio.parse_float(path, lineno, tok) for tok in text.split(",")])
        row_lines.append(lineno)
    if not rows:
        raise ParseError(path, len(lines) or 1, "no matrix rows found")
    n = len(rows)
    for lineno, row in zip(row_lines, rows):
        if len(row) != n:
            raise ParseError(
                path, lineno, f"expected {n} columns (square matrix), got {len(row)}"
            )
    arr = np.array(rows, dtype=float)
    asym = np.abs(arr - arr.T).max()
    if asym > tol:
        raise ParseError(path, row_lines[0], f"matrix not symmetric (max gap {asym:.3g})")
    if (np.diag(arr) != 0.0).any():
        raise ParseError(path, row_lines[0], "matrix diagonal must be zero")
    if arr.min() < 0.0:
        raise ParseError(path, row_lines[0], "matrix has negative entries")
    # Symmetrize exactly so downstream comparisons see identical (i,j)/(j,i).
    arr = np.maximum(arr, arr.T)
    return DistanceMatrix(entries=arr, labels=labels, metric=metric)
