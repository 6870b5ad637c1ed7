"""Boundary matrices over Z/2, sparse reduction, and barcode extraction.

The total boundary matrix stacks every simplex of the filtration in order;
entry (i, j) is 1 exactly when simplex i is a face of simplex j.  Working
mod 2 drops orientation signs (and any torsion).  The left-to-right
reduction adds earlier columns into later ones until every nonzero column
has a distinct lowest 1; a zero column births a homology class, a nonzero
column kills the class born at its lowest 1.  Betti numbers computed by
dense Gaussian elimination serve as an independent oracle for the pairing.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import fileio
from .fileio import ParseError, fmt
from .filtration import Filtration


@dataclass
class SparseBinaryMatrix:
    """Column-major Z/2 matrix; each column is a sorted list of row indices.

    Row and column indices are filtration-order simplex ids.  ``dims``
    records the simplex dimension behind each column.
    """

    columns: List[List[int]]
    dims: List[int]

    @property
    def n(self) -> int:
        return len(self.columns)


def total_boundary_matrix(f: Filtration) -> SparseBinaryMatrix:
    """Column j holds the face ids of simplex j (empty for vertices)."""
    return SparseBinaryMatrix(
        columns=[list(s.faces) for s in f.simplices],
        dims=[s.dim for s in f.simplices],
    )


def _xor_sorted(a: List[int], b: List[int]) -> List[int]:
    """Symmetric difference of two sorted index lists."""
    out: List[int] = []
    i = j = 0
    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        if x == y:
            i += 1
            j += 1
        elif x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def reduce_matrix(
    m: SparseBinaryMatrix, record: bool = False
) -> Tuple[SparseBinaryMatrix, Optional[List[Tuple[int, int]]]]:
    """Left-to-right column reduction over Z/2.

    Only earlier columns are ever added into later ones (no swaps), so the
    pairing read off the result is the persistence pairing.  When ``record``
    is set, the returned operation log lists each (source, target) addition,
    allowing R = M·V verification by replay.
    """
    cols = [list(c) for c in m.columns]
    owner: Dict[int, int] = {}
    ops: Optional[List[Tuple[int, int]]] = [] if record else None
    for j in range(len(cols)):
        col = cols[j]
        while col:
            low = col[-1]
            k = owner.get(low)
            if k is None:
                owner[low] = j
                break
            col = _xor_sorted(col, cols[k])
            if ops is not None:
                ops.append((k, j))
        cols[j] = col
    return SparseBinaryMatrix(columns=cols, dims=list(m.dims)), ops


@dataclass(frozen=True)
class Bar:
    """One persistence interval [birth, death); open bars never die."""

    dim: int
    birth: float
    death: float
    open: bool = False

    def lifespan(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class Barcode:
    """All bars of one pipeline run plus the metadata to interpret them.

    ``zero_length`` holds the birth=death pairs from simultaneous arrivals;
    they are kept out of ``bars`` (and hence out of statistics and plots).
    ``span_end`` is the last threshold actually processed, in the same scale
    as the bars.
    """

    bars: Tuple[Bar, ...]
    zero_length: Tuple[Bar, ...]
    metric: str
    max_dim: int
    n_points: int
    normalized: bool
    span_end: float

    def in_dim(self, dim: int) -> Tuple[Bar, ...]:
        return tuple(b for b in self.bars if b.dim == dim)

    def top_dim(self) -> int:
        """Highest dimension holding at least one bar (-1 when empty)."""
        return max((b.dim for b in self.bars), default=-1)


def extract_pairs(
    R: SparseBinaryMatrix,
    f: Filtration,
    normalize: bool = True,
    metric: str = "",
) -> Barcode:
    """Read the birth/death pairing off a reduced matrix.

    Zero column j → a class of dimension dim(σ_j) born at birth(σ_j).
    Nonzero column j with lowest 1 at row i → the class born with σ_i dies
    when σ_j arrives.  Unkilled classes become open bars: death is the last
    processed threshold raw, or exactly 1.0 after normalization (open bars
    reach the right edge of the examined range).  Normalization divides
    births and deaths by the maximum distance of the source matrix.
    """
    divisor = 1.0
    if normalize:
        if f.max_distance <= 0.0:
            raise ValueError("cannot normalize: no strictly positive distance")
        divisor = f.max_distance
    killed: Dict[int, int] = {}
    for j, col in enumerate(R.columns):
        if col:
            killed[col[-1]] = j
    closed: List[Bar] = []
    zero_length: List[Bar] = []
    opens: List[Bar] = []
    for j, col in enumerate(R.columns):
        if col:
            continue
        birth = f.simplices[j].birth
        dim = f.simplices[j].dim
        killer = killed.get(j)
        if killer is None:
            death = 1.0 if normalize else f.span_end
            opens.append(Bar(dim=dim, birth=birth / divisor, death=death, open=True))
        else:
            death = f.simplices[killer].birth
            bar = Bar(dim=dim, birth=birth / divisor, death=death / divisor)
            (zero_length if birth == death else closed).append(bar)
    key = lambda b: (b.dim, b.birth, b.death)
    return Barcode(
        bars=tuple(sorted(closed + opens, key=key)),
        zero_length=tuple(sorted(zero_length, key=key)),
        metric=metric,
        max_dim=f.max_dim,
        n_points=f.n_points,
        normalized=normalize,
        span_end=f.span_end / divisor,
    )


def barcode(
    f: Filtration, normalize: bool = True, metric: str = ""
) -> Barcode:
    """Convenience pipeline: boundary matrix → reduction → pairing."""
    R, _ = reduce_matrix(total_boundary_matrix(f))
    return extract_pairs(R, f, normalize=normalize, metric=metric)


def bars_alive(bars: Sequence[Bar], eps: float) -> Dict[int, int]:
    """Per-dimension count of bars alive at ε: birth ≤ ε and (open or death > ε)."""
    alive: Dict[int, int] = {}
    for b in bars:
        if b.birth <= eps and (b.open or b.death > eps):
            alive[b.dim] = alive.get(b.dim, 0) + 1
    return alive


def _rank_gf2(columns: List[int]) -> int:
    """Rank of a Z/2 matrix given as bitmask columns (Gaussian elimination)."""
    pivots: Dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            high = col.bit_length() - 1
            pivot = pivots.get(high)
            if pivot is None:
                pivots[high] = col
                rank += 1
                break
            col ^= pivot
    return rank


def betti_numbers(f: Filtration, eps: float) -> List[int]:
    """β_k of the complex at threshold ε, for k = 0 .. max_dim.

    Independent of the reduction: restrict to simplices with birth ≤ ε,
    then β_k = n_k − rank ∂_k − rank ∂_{k+1} by elimination over Z/2.
    """
    births = [s.birth for s in f.simplices]
    cutoff = bisect.bisect_right(births, eps)
    row_pos: Dict[int, int] = {}
    counts = [0] * (f.max_dim + 2)
    boundary_cols: List[List[int]] = [[] for _ in range(f.max_dim + 2)]
    for s in f.simplices[:cutoff]:
        row_pos[s.id] = counts[s.dim]
        counts[s.dim] += 1
        if s.dim >= 1:
            mask = 0
            for face in s.faces:
                mask |= 1 << row_pos[face]
            boundary_cols[s.dim].append(mask)
    ranks = [_rank_gf2(cols) for cols in boundary_cols]
    return [
        counts[k] - ranks[k] - ranks[k + 1] for k in range(f.max_dim + 1)
    ]


BARCODE_META_KEY = "barcode-meta"
BARCODE_HEADER = "dim,birth,death,open"


def write_barcode_csv(
    path: str, bc: Barcode, config: Optional[Dict] = None
) -> None:
    """CSV with one bar per line; zero-length pairs included and marked by
    birth = death, so the reader can reconstruct the full object."""
    lines = fileio.metadata_lines(config)
    meta = {
        "metric": bc.metric,
        "max_dim": bc.max_dim,
        "n_points": bc.n_points,
        "normalized": bc.normalized,
        "span_end": bc.span_end,
    }
    lines.append(f"# {BARCODE_META_KEY} " + json.dumps(meta, sort_keys=True))
    lines.append(BARCODE_HEADER)
    for b in list(bc.bars) + list(bc.zero_length):
        lines.append(f"{b.dim},{fmt(b.birth)},{fmt(b.death)},{1 if b.open else 0}")
    fileio.write_text(path, lines)


def read_barcode_csv(path: str) -> Barcode:
    lines = fileio.read_lines(path)
    meta: Dict = {}
    for raw in lines:
        text = raw.strip()
        if not text.startswith("#"):
            break
        body = text.lstrip("#").strip()
        if body.startswith(BARCODE_META_KEY):
            try:
                meta = json.loads(body[len(BARCODE_META_KEY):].strip())
            except json.JSONDecodeError as exc:
                raise ParseError(path, 1, f"bad barcode metadata: {exc}") from None
    bars: List[Bar] = []
    zero_length: List[Bar] = []
    saw_header = False
    for lineno, text in fileio.data_lines(lines):
        if not saw_header:
            if text != BARCODE_HEADER:
                raise ParseError(path, lineno, f"expected header {BARCODE_HEADER!r}")
            saw_header = True
            continue
        parts = text.split(",")
        if len(parts) != 4:
            raise ParseError(path, lineno, f"expected 4 fields, got {len(parts)}")
        try:
            dim = int(parts[0])
            is_open = {"0": False, "1": True}[parts[3].strip()]
        except (ValueError, KeyError):
            raise ParseError(path, lineno, f"bad bar row: {text!r}") from None
        birth = fileio.parse_float(path, lineno, parts[1])
        death = fileio.parse_float(path, lineno, parts[2])
        bar = Bar(dim=dim, birth=birth, death=death, open=is_open)
        if not is_open and birth == death:
            zero_length.append(bar)
        else:
            bars.append(bar)
    if not saw_header:
        raise ParseError(path, len(lines) or 1, "no barcode header found")
    top = max((b.dim for b in bars + zero_length), default=0)
    return Barcode(
        bars=tuple(bars),
        zero_length=tuple(zero_length),
        metric=str(meta.get("metric", "")),
        max_dim=int(meta.get("max_dim", top)),
        n_points=int(meta.get("n_points", 0)),
        normalized=bool(meta.get("normalized", True)),
        span_end=float(meta.get("span_end", 1.0)),
    )
