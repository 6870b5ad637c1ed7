import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_points
from oracles import flag_complex_brute, simplex_birth_brute
from ripsbars.filtration import (
    Filtration,
    build_filtration,
    critical_thresholds,
    expand_increment,
    filtration_lines,
    neighborhood_edges,
)
from ripsbars.metrics import DistanceMatrix, Point2, build_distance_matrix


def matrix_from(entries):
    return DistanceMatrix(entries=np.array(entries, dtype=float))


def test_critical_thresholds_basic():
    assert critical_thresholds(matrix_from([[0, 1], [1, 0]])) == [1.0]


def test_critical_thresholds_duplicates_collapse():
    m = matrix_from([[0, 0.5, 0.5], [0.5, 0, 0.5], [0.5, 0.5, 0]])
    assert critical_thresholds(m) == [0.5]


def test_critical_thresholds_zero_first_for_duplicate_points():
    m = matrix_from([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    assert critical_thresholds(m) == [0.0, 1.0]


def test_critical_thresholds_single_point():
    assert critical_thresholds(matrix_from([[0]])) == []


def test_neighborhood_edges_square(square_matrix):
    # At ε = 1 only the four sides qualify, not the √2 diagonals.
    assert neighborhood_edges(square_matrix, 1.0) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert neighborhood_edges(square_matrix, 0.5) == []
    assert len(neighborhood_edges(square_matrix, math.sqrt(2))) == 6


def test_expand_triangle_completes_at_third_edge():
    f = Filtration(n_points=3, max_dim=2, max_distance=2.0)
    expand_increment(f, [(0, 1)], 1.0)
    expand_increment(f, [(1, 2)], 1.5)
    assert f.simplex_id((0, 1, 2)) is None
    expand_increment(f, [(0, 2)], 2.0)
    tri = f.simplex_id((0, 1, 2))
    assert tri is not None
    assert f.simplices[tri].birth == 2.0


def test_four_close_points_full_complex():
    pts = [Point2(0, 0), Point2(0.1, 0), Point2(0, 0.1), Point2(0.1, 0.1)]
    f = build_filtration(build_distance_matrix(pts, "euclidean"), max_dim=3)
    dims = [s.dim for s in f.simplices]
    assert dims.count(0) == 4
    assert dims.count(1) == 6
    assert dims.count(2) == 4
    assert dims.count(3) == 1


def test_square_has_no_triangles_at_one(square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    for s in f.simplices:
        if s.dim == 2:
            assert s.birth == pytest.approx(math.sqrt(2))
    at_one = [s for s in f.simplices if s.birth <= 1.0]
    assert all(s.dim <= 1 for s in at_one)


def test_duplicate_points_simplex_at_zero():
    """k coincident points form their shared (k−1)-simplex at ε = 0."""
    pts = [Point2(0, 0), Point2(0, 0), Point2(0, 0), Point2(1, 0)]
    f = build_filtration(build_distance_matrix(pts, "euclidean"), max_dim=3)
    tri = f.simplex_id((0, 1, 2))
    assert tri is not None
    assert f.simplices[tri].birth == 0.0
    assert f.thresholds[0] == 0.0


def test_duplicate_points_respect_dim_cap():
    pts = [Point2(0, 0)] * 4
    f = build_filtration(build_distance_matrix(pts, "euclidean"), max_dim=2)
    assert max(s.dim for s in f.simplices) == 2
    assert f.simplex_id((0, 1, 2, 3)) is None


def test_order_soundness_faces_precede_cofaces(square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    for s in f.simplices:
        assert s.faces == tuple(sorted(s.faces))
        for face_id in s.faces:
            assert face_id < s.id
            face = f.simplices[face_id]
            assert face.dim == s.dim - 1
            assert face.birth <= s.birth
            assert set(face.vertices) < set(s.vertices)


def test_filtration_sorted_by_birth_dim_vertices(square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    keys = [(s.birth, s.dim, s.vertices) for s in f.simplices]
    assert keys == sorted(keys)


def test_expand_rejects_duplicate_edge():
    f = Filtration(n_points=2, max_dim=2, max_distance=1.0)
    expand_increment(f, [(0, 1)], 1.0)
    with pytest.raises(ValueError, match="already present"):
        expand_increment(f, [(0, 1)], 2.0)


def test_two_points_stopping():
    m = matrix_from([[0, 1], [1, 0]])
    f = build_filtration(m, max_dim=2, stop_when_connected=True)
    births = [(s.dim, s.birth) for s in f.simplices]
    assert births == [(0, 0.0), (0, 0.0), (1, 1.0)]
    assert f.connected_at == 1.0
    assert not f.stopped_early  # nothing remained after ε = 1


def test_collinear_points_stop_at_second_threshold():
    pts = [Point2(0, 0), Point2(1, 0), Point2(3, 0)]
    m = build_distance_matrix(pts, "euclidean")
    f = build_filtration(m, max_dim=2, stop_when_connected=True)
    assert f.thresholds == [1.0, 2.0]
    assert f.connected_at == 2.0
    assert f.stopped_early  # the 0–2 pair at distance 3 was never processed
    assert f.span_end == 2.0


def test_connected_at_recorded_without_stopping():
    pts = [Point2(0, 0), Point2(1, 0), Point2(3, 0)]
    m = build_distance_matrix(pts, "euclidean")
    f = build_filtration(m, max_dim=2, stop_when_connected=False)
    assert f.connected_at == 2.0
    assert f.thresholds == [1.0, 2.0, 3.0]
    assert not f.stopped_early


def test_single_point_trivially_connected():
    f = build_filtration(matrix_from([[0]]), max_dim=2)
    assert f.connected_at == 0.0
    assert len(f) == 1
    assert f.span_end == 0.0


def test_max_dim_zero_keeps_only_vertices():
    m = matrix_from([[0, 1], [1, 0]])
    f = build_filtration(m, max_dim=0)
    assert [s.dim for s in f.simplices] == [0, 0]
    assert f.connected_at == 1.0  # connectivity follows the neighborhood graph


def test_monotone_growth_across_thresholds(square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    seen = set()
    previous = set()
    for span in f.spans:
        current = previous | {
            f.simplices[i].vertices for i in range(span.start, span.end)
        }
        assert previous <= current
        previous = current
        seen |= current
    assert seen == f.vertex_sets()


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=2, max_value=10))
def test_flag_property_matches_brute_force(seed, n):
    """At every threshold the simplex set equals brute-force clique search,
    and every simplex is born exactly when its longest edge appears."""
    rng = np.random.default_rng(seed)
    pts = random_points(rng, n)
    max_dim = int(rng.integers(1, 4))
    m = build_distance_matrix(pts, "euclidean")
    f = build_filtration(m, max_dim=max_dim)
    for eps in f.thresholds:
        have = {s.vertices for s in f.simplices if s.birth <= eps}
        assert have == flag_complex_brute(m, eps, max_dim)
    for s in f.simplices:
        assert s.birth == simplex_birth_brute(m, s.vertices)


def test_incremental_matches_rebuild_from_scratch():
    rng = np.random.default_rng(17)
    pts = random_points(rng, 8)
    m = build_distance_matrix(pts, "taxicab")
    f = build_filtration(m, max_dim=3)
    final = flag_complex_brute(m, f.thresholds[-1], 3)
    assert f.vertex_sets() == final


def test_filtration_lines_format(square_matrix):
    f = build_filtration(square_matrix, max_dim=2)
    lines = filtration_lines(f)
    assert lines[0] == "0, 0, 0"
    assert lines[4] == "1, 1, 0 1"
    assert len(lines) == len(f)
