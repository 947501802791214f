#!/usr/bin/env python

"""Tests for graph construction, window partitions and cell counting."""

import numpy as np
import pytest

from assouad_sim.core.errors import InvalidArgument
from assouad_sim.core.graph_geometry import (
    Graph2D, Polyline, Window, apply_scaling_map, brute_force_count, build_graph,
    count_cover, count_window, dyadic_intervals, full_window_graph, line_graph, map_window,
    sawtooth_graph, window_cells)
from assouad_sim.core.process_sim import ProcessSpec, SamplePath, gen_wiener, unit_grid

__docformat__ = 'restructuredtext'


def unit_window(n):
    return Window.square((0.0, 0.0), 1.0, n)


# ---------------------------------------------------------------- graphs

def test_constant_graph_is_flat():
    path = SamplePath(unit_grid(4), np.zeros(5), 0.25, 0, ProcessSpec.deterministic())
    g = build_graph(path)
    assert g.segments.shape == (4, 2, 2)
    assert np.all(g.segments[:, :, 1] == 0)
    (_, _), (low, high) = g.bbox
    assert high - low == 0


def test_two_point_graph_is_one_segment():
    path = SamplePath([0.0, 1.0], [0.0, 1.0], 1.0, 0, ProcessSpec.deterministic())
    np.testing.assert_array_equal(build_graph(path).segments, [[[0.0, 0.0], [1.0, 1.0]]])


def test_graph_segments_are_chained(wiener_graph):
    segments = wiener_graph.segments
    np.testing.assert_array_equal(segments[1:, 0], segments[:-1, 1])
    assert np.all(np.diff(wiener_graph.t) >= 0)


def test_graph_needs_two_points():
    path = SamplePath([0.0], [0.0], 1.0, 0, ProcessSpec.deterministic())
    with pytest.raises(InvalidArgument):
        build_graph(path)
    with pytest.raises(InvalidArgument):
        Graph2D([0.0, 1.0, 0.5], [0.0, 0.0, 0.0])


def test_restrict_interpolates_and_keeps_vertical_joins():
    g = Graph2D([0.0, 0.5, 0.5, 1.0], [0.0, 1.0, -1.0, 0.0])
    part = g.restrict(0.25, 0.75)
    np.testing.assert_array_equal(part.t, [0.25, 0.5, 0.5, 0.75])
    np.testing.assert_array_equal(part.x, [0.5, 1.0, -1.0, -0.5])
    assert g.value_at(0.5) == 1.0
    assert g.value_at(0.75) == -0.5


# ---------------------------------------------------------------- windows

def test_window_cells_on_half_integer_grid():
    cells = window_cells(unit_window(2))
    assert len(cells) == 4
    corners = {(c.lower, c.upper) for c in cells}
    assert ((0.5, 0.5), (1.0, 1.0)) in corners
    assert ((0.0, 0.5), (0.5, 1.0)) in corners


def test_window_single_cell():
    (cell,) = window_cells(Window((3.0, -1.0), (2.0, 4.0), (1, 1)))
    assert cell.lower == (3.0, -1.0)
    assert cell.upper == (5.0, 3.0)


def test_window_cell_sizes():
    cells = window_cells(Window((0.0, 0.0), (1.0, 1.0), (3, 2)))
    assert len(cells) == 6
    for c in cells:
        assert c.upper[0] - c.lower[0] == pytest.approx(1.0 / 3.0)
        assert c.upper[1] - c.lower[1] == pytest.approx(0.5)


@pytest.mark.parametrize('kwargs', [
    dict(anchor=(0.0, 0.0), sides=(0.0, 1.0), subdivisions=(1, 1)),
    dict(anchor=(0.0, 0.0), sides=(1.0, 1.0), subdivisions=(0, 1)),
    dict(anchor=(0.0,), sides=(1.0, 1.0), subdivisions=(1, 1)),
])
def test_window_validation(kwargs):
    with pytest.raises(InvalidArgument):
        Window(**kwargs)


def test_window_dict_round_trip():
    w = Window((0.25, -1.0), (0.5, 2.0), (4, 3))
    assert Window.from_dict(w.to_dict()) == w


# ---------------------------------------------------------------- counting

@pytest.mark.parametrize('n', [1, 2, 5, 8])
def test_constant_graph_hits_bottom_row(n):
    result = count_window(line_graph(slope=0.0, intercept=0.0), unit_window(n))
    assert result.count == n
    assert result.mask[:, 0].all()


@pytest.mark.parametrize('n', [1, 2, 3, 4, 7, 8])
def test_diagonal_hits_three_n_minus_two(n):
    diagonal = Graph2D([0.0, 1.0], [0.0, 1.0])
    assert count_window(diagonal, unit_window(n)).count == 3 * n - 2
    assert brute_force_count(diagonal, unit_window(n)).count == 3 * n - 2


@pytest.mark.parametrize('n', [1, 2, 3, 8, 16])
def test_sawtooth_fills_window(n):
    assert count_window(sawtooth_graph(n), unit_window(n)).count == n * n


def test_count_window_matches_brute_force_on_random_polylines():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        m = rng.integers(2, 12)
        g = Graph2D(np.sort(rng.uniform(-0.5, 1.5, m)), rng.uniform(-1.0, 1.0, m))
        w = Window((rng.uniform(-0.5, 0.5), rng.uniform(-1.0, 0.5)),
                   (rng.uniform(0.1, 1.5), rng.uniform(0.1, 1.5)),
                   (rng.integers(1, 9), rng.integers(1, 9)))
        fast, oracle = count_window(g, w), brute_force_count(g, w)
        np.testing.assert_array_equal(fast.mask, oracle.mask)


def test_segment_on_an_inexact_edge_hits_both_rows():
    # 0.1 + 0.6/3 is not a binary fraction
    g = Graph2D([0.0, 1.0], [0.3, 0.3])
    w = Window((0.0, 0.1), (1.0, 0.6), (3, 3))
    oracle = brute_force_count(g, w)
    assert oracle.mask[:, 1].all()
    np.testing.assert_array_equal(count_window(g, w).mask, oracle.mask)


def test_count_window_matches_brute_force_with_vertices_on_edges():
    rng = np.random.default_rng(7)
    for _ in range(500):
        w = Window((rng.uniform(-0.5, 0.5), rng.uniform(-1.0, 0.5)),
                   (rng.uniform(0.1, 1.5), rng.uniform(0.1, 1.5)),
                   (rng.integers(1, 9), rng.integers(1, 9)))
        m = rng.integers(2, 10)
        g = Graph2D(np.sort(rng.choice(w.edges(0), m)), rng.choice(w.edges(1), m))
        np.testing.assert_array_equal(count_window(g, w).mask, brute_force_count(g, w).mask)


def test_graph_below_window_hits_nothing():
    g = line_graph(slope=0.0, intercept=-0.001)
    assert brute_force_count(g, unit_window(4)).count == 0
    assert count_window(g, unit_window(4)).count == 0


def test_segment_on_shared_edge_hits_both_rows():
    g = line_graph(slope=0.0, intercept=0.5)
    assert brute_force_count(g, unit_window(2)).count == 4
    assert count_window(g, unit_window(2)).count == 4


def test_brute_force_refuses_large_windows():
    with pytest.raises(InvalidArgument):
        brute_force_count(line_graph(), Window((0.0, 0.0), (1.0, 1.0), (101, 100)))


def test_refinement_never_decreases_count(wiener_graph):
    w = Window((0.0, -0.5), (1.0, 1.0), (1, 1))
    previous = 0
    for n in (1, 2, 4, 8, 16, 32):
        count = count_window(wiener_graph, Window(w.anchor, w.sides, (n, n))).count
        assert count >= previous
        previous = count


@pytest.mark.parametrize('n', [2, 5, 16])
def test_function_graph_has_a_cell_per_column(wiener_graph, n):
    (t0, t1), (low, high) = wiener_graph.bbox
    w = Window((t0, low), (t1 - t0, high - low), (n, n))
    count = count_window(wiener_graph, w).count
    assert n <= count <= n * n


def test_trail_counting_in_three_dimensions():
    trail = Polyline([[0.0, 0.0, 0.0], [1.0, 1.0, 1.0]])
    w = Window((0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (2, 2, 2))
    # the cube diagonal passes through the centre corner, touching all 8 cells
    assert count_window(trail, w).count == 8


# ---------------------------------------------------------------- scaling maps

def test_scaling_map_on_full_interval_is_identity(wiener_graph):
    mapped = apply_scaling_map(wiener_graph, (0.0, 1.0), 2.0)
    np.testing.assert_array_equal(mapped.t, wiener_graph.t)
    np.testing.assert_array_equal(mapped.x, wiener_graph.x)


def test_scaling_map_of_homogeneous_line():
    mapped = apply_scaling_map(Graph2D([0.0, 1.0], [0.0, 1.0]), (0.0, 0.5), 1.0)
    np.testing.assert_array_equal(mapped.t, [0.0, 1.0])
    np.testing.assert_array_equal(mapped.x, [0.0, 1.0])


def test_scaling_map_rejects_degenerate_interval(wiener_graph):
    with pytest.raises(InvalidArgument):
        apply_scaling_map(wiener_graph, (0.5, 0.5), 2.0)


def test_scaled_wiener_increments_keep_their_law():
    length = 0.25
    increments = []
    for seed in range(1000):
        mapped = apply_scaling_map(build_graph(gen_wiener(64, seed)), (0.25, 0.5), 2.0)
        increments.append(np.diff(mapped.x))
    step = (1.0 / 64) / length
    assert np.var(np.concatenate(increments)) == pytest.approx(step, rel=0.1)


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_counts_are_preserved_by_scaling_maps(seed):
    g = build_graph(gen_wiener(2 ** 10, seed))
    interval = (0.25, 0.5)
    origin = g.value_at(interval[0])
    w = Window((0.25 + 1.0 / 16, origin - 0.125), (0.125, 0.25), (4, 4))
    mapped = map_window(w, interval, 2.0, origin)
    before = count_window(g, w)
    after = count_window(apply_scaling_map(g, interval, 2.0), mapped)
    np.testing.assert_array_equal(before.mask, after.mask)


# ---------------------------------------------------------------- covering counts

def test_cover_of_a_lattice_point():
    assert count_cover(np.array([[0.0, 0.0]]), (0.0, 0.0), 1.0, 1.0) == 4


@pytest.mark.parametrize('geometry', [
    line_graph(slope=0.0, intercept=0.0),
    Polyline([[0.0, 0.0], [1.0, 0.0]]),
])
def test_cover_of_a_unit_segment(geometry):
    assert count_cover(geometry, (0.5, 0.0), 0.5, 0.25) == 12


def test_cover_of_nothing():
    assert count_cover(np.empty((0, 2)), (0.0, 0.0), 1.0, 0.5) == 0
    assert count_cover([], (0.0, 0.0), 1.0, 0.5) == 0
    assert count_cover(line_graph(), (5.0, 5.0), 1.0, 0.5) == 0


def test_cover_rejects_inverted_scales():
    with pytest.raises(InvalidArgument):
        count_cover(line_graph(), (0.5, 0.5), 0.25, 0.5)


def test_cover_of_graph_matches_polyline(wiener_graph):
    polyline = Polyline(wiener_graph.vertices)
    for center in [(0.5, wiener_graph.value_at(0.5)), (0.1, 0.0), (0.99, 0.3)]:
        for R, r in [(0.25, 2.0 ** -6), (0.0625, 2.0 ** -9)]:
            assert count_cover(wiener_graph, center, R, r) == count_cover(polyline, center, R, r)


# ---------------------------------------------------------------- fixtures

def test_dyadic_intervals():
    assert dyadic_intervals(3) == [(0.0, 0.5), (0.5, 0.75), (0.75, 0.875)]


@pytest.mark.parametrize('n', [1, 2, 4, 16])
def test_full_window_graph_fills_its_squares(n):
    g = full_window_graph(3, teeth=16)
    for a, b in dyadic_intervals(3):
        assert count_window(g, Window.square((a, 0.0), b - a, n)).count == n * n
