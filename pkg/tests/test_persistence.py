import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_points
from ripsbars.filtration import build_filtration
from ripsbars.metrics import DistanceMatrix, Point2, build_distance_matrix
from ripsbars.persistence import (
    Bar,
    Barcode,
    SparseBinaryMatrix,
    bars_alive,
    barcode,
    betti_numbers,
    extract_pairs,
    read_barcode_csv,
    reduce_matrix,
    total_boundary_matrix,
    write_barcode_csv,
)


def matrix_from(entries):
    return DistanceMatrix(entries=np.array(entries, dtype=float))


# ------------------------------------------------------------ boundary matrix

def test_boundary_single_vertex():
    f = build_filtration(matrix_from([[0]]), max_dim=2)
    M = total_boundary_matrix(f)
    assert M.columns == [[]]
    assert M.dims == [0]


def test_boundary_one_edge():
    f = build_filtration(matrix_from([[0, 1], [1, 0]]), max_dim=2)
    M = total_boundary_matrix(f)
    assert M.columns == [[], [], [0, 1]]


def test_boundary_filled_triangle():
    pts = [Point2(0, 0), Point2(1, 0), Point2(0.5, 0.5)]
    f = build_filtration(build_distance_matrix(pts, "euclidean"), max_dim=2)
    M = total_boundary_matrix(f)
    triangle_cols = [c for c, d in zip(M.columns, M.dims) if d == 2]
    assert len(triangle_cols) == 1
    (col,) = triangle_cols
    assert len(col) == 3
    assert all(M.dims[r] == 1 for r in col)


# ----------------------------------------------------------------- reduction

def test_reduce_leaves_reduced_matrix_unchanged():
    M = SparseBinaryMatrix(columns=[[], [], [0, 1]], dims=[0, 0, 1])
    R, _ = reduce_matrix(M)
    assert R.columns == M.columns


def test_reduce_identical_columns_cancel():
    # Two parallel edges: the second column reduces to zero.
    M = SparseBinaryMatrix(columns=[[], [], [0, 1], [0, 1]], dims=[0, 0, 1, 1])
    R, _ = reduce_matrix(M)
    assert R.columns[2] == [0, 1]
    assert R.columns[3] == []


def test_reduce_triangle_boundary_births_cycle():
    # Three edges on three vertices: the third edge column becomes zero.
    M = SparseBinaryMatrix(
        columns=[[], [], [], [0, 1], [1, 2], [0, 2]], dims=[0, 0, 0, 1, 1, 1]
    )
    R, _ = reduce_matrix(M)
    assert R.columns[3] == [0, 1]
    assert R.columns[4] == [1, 2]
    assert R.columns[5] == []


def _xor(a, b):
    return sorted(set(a) ^ set(b))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_reduction_soundness_random(seed):
    """Distinct lowest ones, and R equals M·V replayed from the op log,
    where every recorded addition flows from an earlier column."""
    rng = np.random.default_rng(seed)
    pts = random_points(rng, int(rng.integers(3, 9)))
    m = build_distance_matrix(pts, "supremum")
    f = build_filtration(m, max_dim=2)
    M = total_boundary_matrix(f)
    R, ops = reduce_matrix(M, record=True)
    lows = [col[-1] for col in R.columns if col]
    assert len(lows) == len(set(lows))
    for src, dst in ops:
        assert src < dst  # V is upper triangular with unit diagonal
    replay = [list(c) for c in M.columns]
    for src, dst in ops:
        replay[dst] = _xor(replay[dst], replay[src])
    assert replay == R.columns


# ------------------------------------------------------------- extract_pairs

def test_two_points_barcode():
    f = build_filtration(matrix_from([[0, 1], [1, 0]]), max_dim=2)
    bc = barcode(f, normalize=False)
    assert bc.bars == (
        Bar(dim=0, birth=0.0, death=1.0, open=False),
        Bar(dim=0, birth=0.0, death=1.0, open=True),
    )


def test_square_barcode_raw_and_normalized(square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    raw = barcode(f, normalize=False)
    h1 = raw.in_dim(1)
    assert len(h1) == 1
    assert h1[0].birth == 1.0
    assert h1[0].death == pytest.approx(math.sqrt(2))
    norm = barcode(f, normalize=True)
    nh1 = norm.in_dim(1)
    assert nh1[0].birth == pytest.approx(1 / math.sqrt(2))
    assert nh1[0].death == 1.0
    # two simultaneous-arrival pairs at the diagonal threshold
    assert len(norm.zero_length) == 2
    assert all(b.dim == 1 for b in norm.zero_length)


def test_triangle_cycle_filled_instantly():
    m = matrix_from([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    bc = barcode(build_filtration(m, max_dim=2), normalize=False)
    assert bc.in_dim(1) == ()
    assert len(bc.zero_length) == 1


def test_open_bars_normalized_death_is_one():
    pts = [Point2(0, 0), Point2(1, 0), Point2(3, 0)]
    m = build_distance_matrix(pts, "euclidean")
    f = build_filtration(m, max_dim=2, stop_when_connected=True)
    bc = barcode(f, normalize=True)
    opens = [b for b in bc.bars if b.open]
    assert len(opens) == 1
    assert opens[0] == Bar(dim=0, birth=0.0, death=1.0, open=True)
    # raw scale: the open bar ends at the last processed threshold
    raw = barcode(f, normalize=False)
    raw_open = [b for b in raw.bars if b.open]
    assert raw_open[0].death == 2.0
    assert raw.span_end == 2.0


def test_normalize_requires_positive_distance():
    f = build_filtration(matrix_from([[0]]), max_dim=1)
    with pytest.raises(ValueError, match="normalize"):
        barcode(f, normalize=True)


def test_exactly_one_open_h0_iff_connected():
    rng = np.random.default_rng(31)
    pts = random_points(rng, 9)
    m = build_distance_matrix(pts, "euclidean")
    f = build_filtration(m, max_dim=2)
    bc = barcode(f, normalize=False)
    h0_open = [b for b in bc.bars if b.dim == 0 and b.open]
    assert f.components == 1
    assert len(h0_open) == 1


def test_pairing_partition():
    """Every simplex is exactly one of: open-bar birth, closed-pair birth,
    or closed-pair killer."""
    rng = np.random.default_rng(77)
    pts = random_points(rng, 8)
    m = build_distance_matrix(pts, "taxicab")
    f = build_filtration(m, max_dim=3)
    M = total_boundary_matrix(f)
    R, _ = reduce_matrix(M)
    births = sum(1 for c in R.columns if not c)
    killers = sum(1 for c in R.columns if c)
    assert births + killers == len(f)
    bc = extract_pairs(R, f, normalize=False)
    assert len(bc.bars) + len(bc.zero_length) == births
    open_count = sum(1 for b in bc.bars if b.open)
    closed_count = len(bc.bars) - open_count + len(bc.zero_length)
    assert closed_count == killers


# ------------------------------------------------------------- betti numbers

def test_betti_isolated_vertices():
    m = matrix_from([[0, 9, 9], [9, 0, 9], [9, 9, 0]])
    f = build_filtration(m, max_dim=2)
    assert betti_numbers(f, 1.0) == [3, 0, 0]


def test_betti_square(square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    assert betti_numbers(f, 1.0) == [1, 1, 0]
    assert betti_numbers(f, math.sqrt(2)) == [1, 0, 1]


def test_betti_full_tetrahedron_contractible():
    pts = [Point2(0, 0), Point2(0.1, 0), Point2(0, 0.1), Point2(0.1, 0.1)]
    f = build_filtration(build_distance_matrix(pts, "euclidean"), max_dim=3)
    assert betti_numbers(f, 1.0) == [1, 0, 0, 0]


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_live_bars_equal_betti_numbers(seed):
    """Bars alive at each threshold (open bars included) match the Gaussian-
    elimination oracle dimension by dimension."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 10))
    max_dim = int(rng.integers(1, 4))
    pts = random_points(rng, n)
    if n >= 4 and rng.random() < 0.3:
        pts[-1] = pts[0]  # duplicate point exercises the ε = 0 threshold
    m = build_distance_matrix(pts, "euclidean")
    f = build_filtration(m, max_dim=max_dim)
    bc = barcode(f, normalize=False)
    for eps in f.thresholds:
        alive = bars_alive(bc.bars, eps)
        betti = betti_numbers(f, eps)
        for k in range(max_dim + 1):
            assert alive.get(k, 0) == betti[k]


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_euler_characteristic_conservation(seed):
    rng = np.random.default_rng(seed)
    pts = random_points(rng, int(rng.integers(3, 9)))
    m = build_distance_matrix(pts, "euclidean")
    f = build_filtration(m, max_dim=3)
    for eps in f.thresholds:
        counts = {}
        for s in f.simplices:
            if s.birth <= eps:
                counts[s.dim] = counts.get(s.dim, 0) + 1
        chi_simplices = sum((-1) ** d * c for d, c in counts.items())
        chi_betti = sum((-1) ** k * b for k, b in enumerate(betti_numbers(f, eps)))
        assert chi_simplices == chi_betti


# ---------------------------------------------------------------- barcode CSV

def test_barcode_csv_round_trip(tmp_path, square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    bc = barcode(f, normalize=True, metric="euclidean")
    path = tmp_path / "barcode.csv"
    write_barcode_csv(str(path), bc, config={"command": "persist"})
    back = read_barcode_csv(str(path))
    assert back.bars == bc.bars
    assert back.zero_length == bc.zero_length
    assert back.metric == "euclidean"
    assert back.max_dim == 2
    assert back.n_points == 4
    assert back.normalized is True
    assert back.span_end == bc.span_end


def test_barcode_csv_17_digit_round_trip(tmp_path):
    # An irrational birth must survive the decimal round trip bit for bit.
    bc = Barcode(
        bars=(Bar(dim=1, birth=1 / math.sqrt(2), death=1.0, open=False),),
        zero_length=(),
        metric="euclidean",
        max_dim=2,
        n_points=4,
        normalized=True,
        span_end=1.0,
    )
    path = tmp_path / "barcode.csv"
    write_barcode_csv(str(path), bc)
    back = read_barcode_csv(str(path))
    assert back.bars[0].birth == 1 / math.sqrt(2)


def test_barcode_csv_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("dim,birth,death,open\n1,0.5\n")
    with pytest.raises(Exception, match="fields"):
        read_barcode_csv(str(path))


def test_barcode_csv_requires_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,0.5,0.7,0\n")
    with pytest.raises(Exception, match="header"):
        read_barcode_csv(str(path))
