"""Per-dimension barcode statistics and multi-metric comparison tables.

Statistics are defined on normalized barcodes only (ε rescaled to [0, 1]),
so lifespans are comparable across metrics.  A bar's lifespan is
death − birth; an open bar lives to the right edge, 1 − birth.  Bar counts
include open bars; zero-length pairs were already excluded upstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import fileio
from .fileio import fmt
from .persistence import Barcode


@dataclass(frozen=True)
class BarStats:
    """Count and lifespan summary of one dimension of one barcode.

    The lifespan fields are None when there are no bars, which tables
    render as '-' — distinct from bars of tiny positive length.
    """

    dim: int
    count: int
    avg_lifespan: Optional[float]
    min_lifespan: Optional[float]
    max_lifespan: Optional[float]


def bar_stats(bc: Barcode, dim: int) -> BarStats:
    """Summarize the bars of one dimension; rejects un-normalized input."""
    if not bc.normalized:
        raise ValueError("bar statistics require a normalized barcode")
    spans = [
        (1.0 - b.birth) if b.open else (b.death - b.birth) for b in bc.in_dim(dim)
    ]
    if not spans:
        return BarStats(dim=dim, count=0, avg_lifespan=None, min_lifespan=None, max_lifespan=None)
    return BarStats(
        dim=dim,
        count=len(spans),
        avg_lifespan=sum(spans) / len(spans),
        min_lifespan=min(spans),
        max_lifespan=max(spans),
    )


@dataclass(frozen=True)
class ComparisonReport:
    """Side-by-side BarStats per (metric, dimension).

    ``metrics`` preserves input order; ``dims`` runs from 0 to the highest
    dimension holding a bar in any run, so empty trailing dimensions do not
    pad the table.
    """

    metrics: Tuple[str, ...]
    dims: Tuple[int, ...]
    cells: Dict[Tuple[str, int], BarStats]
    n_points: int


def _build_report(runs: Sequence[Tuple[str, Barcode]]) -> ComparisonReport:
    names = [name for name, _ in runs]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate run names: {names}")
    for name, bc in runs:
        if not bc.normalized:
            raise ValueError(f"run {name!r}: bar statistics require a normalized barcode")
    top = max((bc.top_dim() for _, bc in runs), default=-1)
    dims = tuple(range(max(top, 0) + 1))
    cells = {
        (name, dim): bar_stats(bc, dim) for name, bc in runs for dim in dims
    }
    return ComparisonReport(
        metrics=tuple(names),
        dims=dims,
        cells=cells,
        n_points=runs[0][1].n_points if runs else 0,
    )


def compare(runs: Sequence[Tuple[str, Barcode]]) -> ComparisonReport:
    """Merge several runs over the same point set into one report.

    Requires at least two runs; all must describe the same number of
    points, otherwise the comparison is meaningless and rejected.
    """
    if len(runs) < 2:
        raise ValueError(f"compare needs at least 2 runs, got {len(runs)}")
    counts = {bc.n_points for _, bc in runs}
    if len(counts) != 1:
        raise ValueError(f"runs describe different point counts: {sorted(counts)}")
    return _build_report(runs)


def stats_report(runs: Sequence[Tuple[str, Barcode]]) -> ComparisonReport:
    """Like :func:`compare` but for reporting on any number of runs ≥ 1."""
    if not runs:
        raise ValueError("need at least one barcode")
    return _build_report(runs)


STATS_HEADER = "metric,dim,count,avg,min,max"


def _cell_fields(s: BarStats) -> Tuple[str, str, str, str]:
    if s.count == 0:
        return ("0", "-", "-", "-")
    return (
        str(s.count),
        fmt(s.avg_lifespan),
        fmt(s.min_lifespan),
        fmt(s.max_lifespan),
    )


def write_stats_csv(
    path: str, report: ComparisonReport, config: Optional[Dict[str, Any]] = None
) -> None:
    lines = fileio.metadata_lines(config)
    lines.append(STATS_HEADER)
    for dim in report.dims:
        for name in report.metrics:
            count, avg, lo, hi = _cell_fields(report.cells[(name, dim)])
            lines.append(f"{name},{dim},{count},{avg},{lo},{hi}")
    fileio.write_text(path, lines)


def format_stats_table(report: ComparisonReport) -> str:
    """Aligned plain-text table, one row per (dimension, metric)."""

    def short(s: BarStats) -> Tuple[str, str, str, str]:
        if s.count == 0:
            return ("0", "-", "-", "-")
        return (
            str(s.count),
            format(s.avg_lifespan, ".6g"),
            format(s.min_lifespan, ".6g"),
            format(s.max_lifespan, ".6g"),
        )

    header = ("dim", "metric", "count", "avg", "min", "max")
    rows: List[Tuple[str, ...]] = [header]
    for dim in report.dims:
        for name in report.metrics:
            rows.append((str(dim), name) + short(report.cells[(name, dim)]))
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    out = []
    for r in rows:
        out.append("  ".join(r[c].ljust(widths[c]) for c in range(len(header))).rstrip())
    return "\n".join(out) + "\n"
