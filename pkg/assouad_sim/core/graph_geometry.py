"""
Graph and trail geometries, window partitions and closed-cell counting.

Cells are closed: a cell is occupied when the geometry touches it, boundary
included. All counters work in grid-normalized coordinates, where the cell
with index ``(i, j, ...)`` is the unit box ``[i, i+1] x [j, j+1] x ...``.
A point then belongs to the cell ``floor(p)`` and, along every axis where
its coordinate is integral, also to the neighbour one step below.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from assouad_sim.core.errors import InvalidArgument

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_CELLS = 10 ** 4
SEGMENT_CHUNK = 2 ** 16
ROUNDING_TOLERANCE = 1e-9


###############################################################################
#                Geometries
###############################################################################

class Graph2D(object):
    """
    Polyline through ``(t_k, x_k)`` with nondecreasing ``t``.

    Consecutive vertices with equal ``t`` are vertical joins; they stand for
    the jumps of a cadlag path, which a sampled path cannot locate below its
    grid step anyway.
    """

    dim = 2

    def __init__(self, t, x):
        t = np.array(t, dtype=float)
        x = np.array(x, dtype=float)
        if t.ndim != 1 or t.shape != x.shape:
            raise InvalidArgument('t and x must be 1-d arrays of the same length')
        if t.size < 2:
            raise InvalidArgument('a graph needs at least 2 vertices, got {}'.format(t.size))
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(x))):
            raise InvalidArgument('graph vertices must be finite')
        if np.any(np.diff(t) < 0):
            raise InvalidArgument('graph t-coordinates must be nondecreasing')
        t.setflags(write=False)
        x.setflags(write=False)
        self.t = t
        self.x = x

    def __repr__(self):
        return 'Graph2D({} vertices on [{:g}, {:g}])'.format(self.t.size, self.t[0], self.t[-1])

    @classmethod
    def from_vertices(cls, vertices):
        vertices = np.asarray(vertices, dtype=float)
        return cls(vertices[:, 0], vertices[:, 1])

    @property
    def vertices(self):
        return np.column_stack([self.t, self.x])

    @property
    def segments(self):
        """(m-1, 2, 2) array of segment endpoints; segment k ends where k+1 starts."""
        v = self.vertices
        return np.stack([v[:-1], v[1:]], axis=1)

    @property
    def bbox(self):
        return (self.t[0], self.t[-1]), (float(self.x.min()), float(self.x.max()))

    def value_at(self, t):
        """Value at ``t``; on a vertical join the first vertex wins."""
        return float(self.restrict(t, None).x[0])

    def restrict(self, a, b):
        """
        The part of the graph over [a, b], endpoints interpolated.
        ``b=None`` returns the single point (or vertical join) at ``a``.
        """
        t, x = self.t, self.x
        single = b is None
        b = a if single else b
        if not (t[0] <= a <= b <= t[-1]) or (not single and a == b):
            raise InvalidArgument('[{}, {}] is not a proper interval within [{}, {}]'.format(
                a, b, t[0], t[-1]))
        lo = np.searchsorted(t, a, side='left')
        hi = np.searchsorted(t, b, side='right')
        ts, xs = list(t[lo:hi]), list(x[lo:hi])
        if lo == hi or t[lo] > a:
            ts.insert(0, a)
            xs.insert(0, self._interpolate(lo - 1, a))
        if t[hi - 1] < b:
            ts.append(b)
            xs.append(self._interpolate(hi - 1, b))
        if single:
            ts, xs = ts[:1] * 2, xs[:1] * 2
        return Graph2D(ts, xs)

    def _interpolate(self, k, t):
        t0, t1 = self.t[k], self.t[k + 1]
        x0, x1 = self.x[k], self.x[k + 1]
        return x0 + (t - t0) / (t1 - t0) * (x1 - x0)


class Polyline(object):
    """Polyline through points of R^d, used for trails of d-dimensional paths."""

    def __init__(self, vertices):
        vertices = np.array(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[0] < 2 or vertices.shape[1] < 1:
            raise InvalidArgument('a polyline needs an (m >= 2, d) vertex array')
        if not np.all(np.isfinite(vertices)):
            raise InvalidArgument('polyline vertices must be finite')
        vertices.setflags(write=False)
        self.vertices = vertices

    def __repr__(self):
        return 'Polyline({} vertices in R^{})'.format(*self.vertices.shape)

    @property
    def dim(self):
        return self.vertices.shape[1]

    @property
    def segments(self):
        return np.stack([self.vertices[:-1], self.vertices[1:]], axis=1)

    @property
    def bbox(self):
        return tuple((float(lo), float(hi)) for lo, hi in
                     zip(self.vertices.min(axis=0), self.vertices.max(axis=0)))


def as_points(points):
    points = np.asarray(points, dtype=float)
    if not points.size:
        return np.empty((0, points.shape[-1] if points.ndim == 2 else 0))
    if points.ndim == 1:
        points = points[None, :]
    if points.ndim != 2 or not np.all(np.isfinite(points)):
        raise InvalidArgument('a point set must be a finite (m, d) array')
    return points


def build_graph(path, coordinate=0):
    if path.times.size < 2:
        raise InvalidArgument('a graph needs a path with at least 2 grid points')
    return Graph2D(path.times, path.coordinate(coordinate))


@dataclass(frozen=True)
class Window(object):
    anchor: tuple
    sides: tuple
    subdivisions: tuple

    def __post_init__(self):
        anchor = tuple(float(a) for a in self.anchor)
        sides = tuple(float(r) for r in self.sides)
        subdivisions = tuple(int(n) for n in self.subdivisions)
        if not len(anchor) == len(sides) == len(subdivisions) or not anchor:
            raise InvalidArgument('anchor, sides and subdivisions must have the same length')
        if not all(np.isfinite(anchor)):
            raise InvalidArgument('window anchor must be finite')
        if not all(np.isfinite(r) and r > 0 for r in sides):
            raise InvalidArgument('window sides must be positive, got {}'.format(sides))
        if any(n < 1 for n in subdivisions) or subdivisions != tuple(self.subdivisions):
            raise InvalidArgument('subdivisions must be integers >= 1, got {}'.format(
                self.subdivisions))
        object.__setattr__(self, 'anchor', anchor)
        object.__setattr__(self, 'sides', sides)
        object.__setattr__(self, 'subdivisions', subdivisions)

    @classmethod
    def square(cls, anchor, side, n, dim=2):
        return cls(tuple(anchor), (side,) * dim, (n,) * dim)

    @property
    def dim(self):
        return len(self.anchor)

    @property
    def cell_count(self):
        return int(np.prod(self.subdivisions))

    def edges(self, axis):
        """Cell edges a + R*i/n, i = 0..n, along ``axis``."""
        n = self.subdivisions[axis]
        return self.anchor[axis] + self.sides[axis] * np.arange(n + 1) / n

    def to_dict(self):
        return {'anchor': list(self.anchor), 'sides': list(self.sides),
                'subdivisions': list(self.subdivisions)}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(data['anchor'], data['sides'], data['subdivisions'])
        except (KeyError, TypeError) as e:
            raise InvalidArgument('bad window description {!r}: {}'.format(data, e)) from e


@dataclass(frozen=True)
class Cell(object):
    index: tuple
    lower: tuple
    upper: tuple


@dataclass(frozen=True, eq=False)
class CountResult(object):
    count: int
    mask: np.ndarray

    def __post_init__(self):
        mask = np.array(self.mask, dtype=bool)
        mask.setflags(write=False)
        if int(self.count) != int(mask.sum()):
            raise InvalidArgument('count {} disagrees with mask ({} cells set)'.format(
                self.count, mask.sum()))
        object.__setattr__(self, 'count', int(self.count))
        object.__setattr__(self, 'mask', mask)

    @property
    def fraction(self):
        return self.count / self.mask.size

    def to_dict(self):
        return {'count': self.count, 'cells': int(self.mask.size), 'fraction': self.fraction}


def window_cells(w):
    edges = [w.edges(axis) for axis in range(w.dim)]
    cells = []
    for index in itertools.product(*(range(n) for n in w.subdivisions)):
        cells.append(Cell(index,
                          tuple(float(e[i]) for e, i in zip(edges, index)),
                          tuple(float(e[i + 1]) for e, i in zip(edges, index))))
    return cells


###############################################################################
#                Cell arithmetic in normalized coordinates
###############################################################################

def _closed_cells(points):
    """Every cell (with repeats) whose closed box contains one of ``points``."""
    base = np.floor(points)
    integral = points == base
    base = base.astype(np.int64)
    cells = [base]
    dim = points.shape[1]
    for bits in itertools.product((0, 1), repeat=dim):
        bits = np.array(bits, dtype=bool)
        if not bits.any():
            continue
        on_planes = np.all(integral[:, bits], axis=1)
        if on_planes.any():
            cells.append(base[on_planes] - bits.astype(np.int64))
    return np.concatenate(cells)


def _plane_crossings(p0, p1, axis):
    """
    Points where the segments strictly cross integer planes of ``axis``, and
    the index of the segment each one lies on.
    """
    a, b = p0[:, axis], p1[:, axis]
    first = np.floor(np.minimum(a, b)) + 1
    last = np.ceil(np.maximum(a, b)) - 1
    counts = np.maximum(last - first + 1, 0).astype(np.int64)
    total = int(counts.sum())
    if not total:
        return np.empty((0, p0.shape[1])), np.empty(0, dtype=np.int64)
    seg = np.repeat(np.arange(a.size), counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    planes = first[seg] + offsets
    s = (planes - a[seg]) / (b[seg] - a[seg])
    points = p0[seg] + s[:, None] * (p1[seg] - p0[seg])
    points[:, axis] = planes
    return points, seg


def _cell_keys(cells, lower, shape):
    return np.ravel_multi_index(tuple((cells - lower).T), shape)


def _segment_cells(p0, p1):
    """
    Unique cells met by the segments p0[k] -> p1[k].

    Between consecutive plane crossings a segment stays inside one closed
    cell, and that cell also holds both ends of the piece; so the cells of
    the endpoints and of the crossing points are all the cells there are.
    """
    if not p0.shape[0]:
        return np.empty((0, p0.shape[1]), dtype=np.int64)
    lower = np.floor(np.minimum(p0.min(axis=0), p1.min(axis=0))).astype(np.int64) - 1
    upper = np.floor(np.maximum(p0.max(axis=0), p1.max(axis=0))).astype(np.int64) + 1
    shape = tuple(upper - lower + 1)
    keys = []
    for start in range(0, p0.shape[0], SEGMENT_CHUNK):
        q0, q1 = p0[start:start + SEGMENT_CHUNK], p1[start:start + SEGMENT_CHUNK]
        points = [q0, q1] + [_plane_crossings(q0, q1, axis)[0] for axis in range(p0.shape[1])]
        cells = _closed_cells(np.concatenate(points))
        keys.append(np.unique(_cell_keys(cells, lower, shape)))
    keys = np.unique(np.concatenate(keys))
    return np.column_stack(np.unravel_index(keys, shape)).astype(np.int64) + lower


def _unique_cells(cells):
    if not cells.shape[0]:
        return cells
    return np.unique(cells, axis=0)


def _clip_parameters(p0, p1, lower, upper):
    """
    Liang-Barsky parameters of the segments against the boxes [lower, upper],
    which broadcast against the segments; ``keep`` flags segments meeting them.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    d = p1 - p0
    t0 = np.zeros(p0.shape[:-1])
    t1 = np.ones(p0.shape[:-1])
    keep = np.ones(p0.shape[:-1], dtype=bool)
    with np.errstate(divide='ignore', invalid='ignore'):
        for axis in range(p0.shape[-1]):
            for p, q in ((-d[..., axis], p0[..., axis] - lower[..., axis]),
                         (d[..., axis], upper[..., axis] - p0[..., axis])):
                keep &= ~((p == 0) & (q < 0))
                ratio = q / p
                t0 = np.where(p < 0, np.maximum(t0, ratio), t0)
                t1 = np.where(p > 0, np.minimum(t1, ratio), t1)
    return t0, t1, keep & (t0 <= t1)


def _clip_segments(p0, p1, lower, upper):
    """Clip every segment to the box [lower, upper]; also returns the kept indices."""
    t0, t1, keep = _clip_parameters(p0, p1, lower, upper)
    d = p1 - p0
    c0 = np.where((t0 > 0)[:, None], p0 + t0[:, None] * d, p0)
    c1 = np.where((t1 < 1)[:, None], p0 + t1[:, None] * d, p1)
    return c0[keep], c1[keep], np.flatnonzero(keep)


def _planar_touch(p0, p1, lower, upper):
    """
    Closed segment/rectangle intersection: bounding-box overlap plus a corner
    orientation test against the segment's supporting line. Broadcasts over
    the leading axes.
    """
    t0, x0, t1, x1 = p0[..., 0], p0[..., 1], p1[..., 0], p1[..., 1]
    ct0, cx0, ct1, cx1 = lower[..., 0], lower[..., 1], upper[..., 0], upper[..., 1]
    overlap = ((np.maximum(t0, t1) >= ct0) & (np.minimum(t0, t1) <= ct1)
               & (np.maximum(x0, x1) >= cx0) & (np.minimum(x0, x1) <= cx1))
    dt, dx = t1 - t0, x1 - x0

    def orientation(ct, cx):
        return dt * (cx - x0) - dx * (ct - t0)

    corners = np.stack(np.broadcast_arrays(orientation(ct0, cx0), orientation(ct1, cx0),
                                           orientation(ct0, cx1), orientation(ct1, cx1)))
    separated = np.all(corners > 0, axis=0) | np.all(corners < 0, axis=0)
    return overlap & ~separated


def _box_touch(p0, p1, lower, upper):
    if p0.shape[-1] == 2:
        return _planar_touch(p0, p1, lower, upper)
    return _clip_parameters(p0, p1, lower, upper)[2]


def _near_cells(points, owners, tol):
    """Cells whose closed box lies within ``tol`` of a point, paired with its owner."""
    lo = np.ceil(points - 1 - tol).astype(np.int64)
    hi = np.floor(points + tol).astype(np.int64)
    cells, who = [], []
    for bits in itertools.product((0, 1), repeat=points.shape[1]):
        candidate = lo + np.array(bits, dtype=np.int64)
        ok = np.all(candidate <= hi, axis=1)
        cells.append(candidate[ok])
        who.append(owners[ok])
    return np.concatenate(cells), np.concatenate(who)


def _inside(cells, n):
    return np.all((cells >= 0) & (cells < n), axis=1)


def _column_spans(u, v):
    """
    For a chain with nondecreasing ``u``: the closed unit columns it meets
    and, per column, the min and max of ``v`` over the part inside it.
    """
    columns = [np.floor(u)]
    values = [v]
    on_line = u == columns[0]
    columns.append(columns[0][on_line] - 1)
    values.append(v[on_line])

    u0, u1, v0, v1 = u[:-1], u[1:], v[:-1], v[1:]
    first = np.floor(u0) + 1
    counts = np.maximum(np.ceil(u1) - first, 0).astype(np.int64)
    total = int(counts.sum())
    if total:
        seg = np.repeat(np.arange(u0.size), counts)
        lines = first[seg] + (np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts))
        crossing = v0[seg] + (lines - u0[seg]) / (u1[seg] - u0[seg]) * (v1[seg] - v0[seg])
        columns.extend([lines, lines - 1])
        values.extend([crossing, crossing])

    columns = np.concatenate(columns)
    values = np.concatenate(values)
    order = np.argsort(columns, kind='stable')
    columns, values = columns[order], values[order]
    starts = np.concatenate([[0], np.flatnonzero(np.diff(columns)) + 1])
    return (columns[starts].astype(np.int64),
            np.minimum.reduceat(values, starts),
            np.maximum.reduceat(values, starts))


class GraphColumns(object):
    """Column spans of a graph on the origin-aligned grid of mesh ``r``."""

    def __init__(self, graph, r):
        self.r = float(r)
        self.columns, self.low, self.high = _column_spans(graph.t / self.r, graph.x / self.r)
        self.first_row = np.ceil(self.low).astype(np.int64) - 1
        self.last_row = np.floor(self.high).astype(np.int64)

    def count(self):
        return int(np.sum(self.last_row - self.first_row + 1))

    def count_ball(self, center, radius):
        cx, cy = center[0] / self.r, center[1] / self.r
        rho = radius / self.r
        lo = np.searchsorted(self.columns, np.ceil(cx - rho) - 1, side='left')
        hi = np.searchsorted(self.columns, np.floor(cx + rho), side='right')
        if lo >= hi:
            return 0
        i = self.columns[lo:hi]
        dx = np.maximum.reduce([np.zeros(i.size), i - cx, cx - (i + 1)])
        h = np.sqrt(np.maximum(rho * rho - dx * dx, 0.0))
        first = np.maximum(np.ceil(cy - h) - 1, self.first_row[lo:hi])
        last = np.minimum(np.floor(cy + h), self.last_row[lo:hi])
        return int(np.sum(np.maximum(last - first + 1, 0)))


def _segments_of(g):
    if isinstance(g, (Graph2D, Polyline)):
        v = g.vertices
        return v[:-1], v[1:]
    raise InvalidArgument('expected a Graph2D or Polyline, got {!r}'.format(type(g).__name__))


###############################################################################
#                Window counting
###############################################################################

def count_window(g, w):
    """
    Closed cells of window ``w`` met by the geometry ``g``.

    Points farther than rounding distance from every cell boundary settle
    their cell directly. Cells within that distance of a point are checked
    against the raw window edges with the predicates of
    :func:`brute_force_count`.
    """
    p0, p1 = _segments_of(g)
    if p0.shape[1] != w.dim:
        raise InvalidArgument('{}-dimensional geometry in a {}-dimensional window'.format(
            p0.shape[1], w.dim))
    anchor = np.array(w.anchor)
    sides = np.array(w.sides)
    n = np.array(w.subdivisions)
    scale = n / sides
    # clip to the window plus one cell of margin
    r0, r1, index = _clip_segments(p0, p1, anchor - sides / n, anchor + sides + sides / n)
    tol = np.minimum(ROUNDING_TOLERANCE * (1.0 + scale * (np.abs(anchor) + sides)), 0.25)
    edges = [w.edges(axis) for axis in range(w.dim)]
    mask = np.zeros(w.subdivisions, dtype=bool)
    for start in range(0, index.size, SEGMENT_CHUNK):
        owner = index[start:start + SEGMENT_CHUNK]
        q0 = (r0[start:start + SEGMENT_CHUNK] - anchor) * scale
        q1 = (r1[start:start + SEGMENT_CHUNK] - anchor) * scale
        local = np.arange(q0.shape[0])
        points, segs = [q0, q1], [local, local]
        for axis in range(w.dim):
            crossings, seg = _plane_crossings(q0, q1, axis)
            points.append(crossings)
            segs.append(seg)
        points, segs = np.concatenate(points), np.concatenate(segs)

        near = np.any(np.abs(points - np.round(points)) <= tol, axis=1)
        settled = np.floor(points[~near]).astype(np.int64)
        settled = settled[_inside(settled, n)]
        mask[tuple(settled.T)] = True

        cells, segs = _near_cells(points[near], segs[near], tol)
        keep = _inside(cells, n)
        cells, segs = cells[keep], segs[keep]
        keep = ~mask[tuple(cells.T)]
        if not keep.any():
            continue
        pairs = np.unique(np.column_stack([cells[keep], owner[segs[keep]]]), axis=0)
        cells, segs = pairs[:, :-1], pairs[:, -1]
        lower = np.column_stack([edges[axis][cells[:, axis]] for axis in range(w.dim)])
        upper = np.column_stack([edges[axis][cells[:, axis] + 1] for axis in range(w.dim)])
        hit = _box_touch(p0[segs], p1[segs], lower, upper)
        mask[tuple(cells[hit].T)] = True
    return CountResult(int(mask.sum()), mask)


def brute_force_count(g, w):
    """Per-cell segment/rectangle intersection on raw coordinates."""
    if w.dim != 2:
        raise InvalidArgument('brute force counting is planar only')
    if w.cell_count > BRUTE_FORCE_MAX_CELLS:
        raise InvalidArgument('brute force counting is limited to {} cells, got {}'.format(
            BRUTE_FORCE_MAX_CELLS, w.cell_count))
    p0, p1 = _segments_of(g)
    if p0.shape[1] != 2:
        raise InvalidArgument('brute force counting needs a planar geometry')
    te, xe = w.edges(0), w.edges(1)
    rows = w.subdivisions[1]
    mask = np.zeros(w.subdivisions, dtype=bool)
    for i in range(w.subdivisions[0]):
        lower = np.column_stack([np.full(rows, te[i]), xe[:-1]])[:, None, :]
        upper = np.column_stack([np.full(rows, te[i + 1]), xe[1:]])[:, None, :]
        mask[i] = np.any(_planar_touch(p0[None], p1[None], lower, upper), axis=1)
    return CountResult(int(mask.sum()), mask)


###############################################################################
#                Scaling maps
###############################################################################

def _scaling_factors(interval, beta):
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise InvalidArgument('degenerate interval [{}, {}]'.format(a, b))
    if not 0 < beta <= 2:
        raise InvalidArgument('beta must lie in (0, 2], got {}'.format(beta))
    length = b - a
    return a, b, 1.0 / length, length ** (-1.0 / beta)


def apply_scaling_map(g, interval, beta):
    """
    Restrict ``g`` to ``interval`` = [a, b] and map (t, x) to
    ((t - a) / |I|, (x - X(a)) / |I|**(1/beta)).
    """
    a, b, t_scale, x_scale = _scaling_factors(interval, beta)
    part = g.restrict(a, b)
    return Graph2D((part.t - a) * t_scale, (part.x - part.x[0]) * x_scale)


def map_window(w, interval, beta, origin_value):
    """Image of window ``w`` under the map of :func:`apply_scaling_map`."""
    if w.dim != 2:
        raise InvalidArgument('scaling maps act on planar windows')
    a, _, t_scale, x_scale = _scaling_factors(interval, beta)
    return Window(((w.anchor[0] - a) * t_scale, (w.anchor[1] - origin_value) * x_scale),
                  (w.sides[0] * t_scale, w.sides[1] * x_scale),
                  w.subdivisions)


###############################################################################
#                Covering counts
###############################################################################

def _cell_ball_distance(cells, center):
    gap = np.maximum(np.maximum(cells - center, center - (cells + 1)), 0.0)
    return np.sqrt(np.sum(gap * gap, axis=1))


def count_cover(geometry, center, R, r):
    """
    Cells of the origin-aligned grid of mesh ``r`` that meet both the closed
    Euclidean ball B(center, R) and the geometry.
    """
    if not (r > 0 and R > 0):
        raise InvalidArgument('scales must be positive, got R={}, r={}'.format(R, r))
    if r > R:
        raise InvalidArgument('inner scale r={} exceeds outer scale R={}'.format(r, R))
    center = np.asarray(center, dtype=float)

    if isinstance(geometry, Graph2D):
        t0, t1 = geometry.t[0], geometry.t[-1]
        lo = max(t0, (np.ceil((center[0] - R) / r) - 1) * r)
        hi = min(t1, (np.floor((center[0] + R) / r) + 1) * r)
        if lo > hi:
            return 0
        part = geometry.restrict(lo, hi) if lo < hi else geometry.restrict(lo, None)
        return GraphColumns(part, r).count_ball(center, R)

    rho = R / r
    c = center / r
    if isinstance(geometry, Polyline):
        p0, p1 = _segments_of(geometry)
        q0, q1, _ = _clip_segments(p0 / r, p1 / r, c - rho - 1, c + rho + 1)
        cells = _segment_cells(q0, q1)
    else:
        points = as_points(geometry) / r
        if not points.shape[0]:
            return 0
        near = np.all(np.abs(points - c) <= rho + 1, axis=1)
        cells = _unique_cells(_closed_cells(points[near]))
    if not cells.shape[0]:
        return 0
    return int(np.sum(_cell_ball_distance(cells, c) <= rho))


def box_count(geometry, r):
    """Cells of the origin-aligned grid of mesh ``r`` met by the geometry."""
    if isinstance(geometry, Graph2D):
        return GraphColumns(geometry, r).count()
    if isinstance(geometry, Polyline):
        p0, p1 = _segments_of(geometry)
        return int(_segment_cells(p0 / r, p1 / r).shape[0])
    points = as_points(geometry)
    if not points.shape[0]:
        raise InvalidArgument('cannot count an empty point set')
    return int(_unique_cells(_closed_cells(points / r)).shape[0])


###############################################################################
#                Synthetic fixtures
###############################################################################

def line_graph(slope=0.125, intercept=1.0 / 3.0, t0=0.0, t1=1.0):
    return Graph2D([t0, t1], [intercept + slope * t0, intercept + slope * t1])


def sawtooth_graph(n, t0=0.0, width=1.0, height=1.0, base=0.0):
    """
    ``n`` straight teeth over [t0, t0 + width], alternating between ``base``
    and ``base + height``; it meets every cell of the n x n window it spans.
    """
    if n < 1:
        raise InvalidArgument('a sawtooth needs at least one tooth')
    t = t0 + width * np.arange(n + 1) / n
    x = base + height * (np.arange(n + 1) % 2)
    return Graph2D(t, x)


def dyadic_intervals(levels):
    """I_i = [a_i, a_i + 2**-i] with a_1 = 0 and a_{i+1} = a_i + 2**-i."""
    intervals = []
    a = 0.0
    for i in range(1, levels + 1):
        intervals.append((a, a + 2.0 ** -i))
        a += 2.0 ** -i
    return intervals


def full_window_graph(levels, teeth=256):
    """
    Graph that is, on each dyadic interval I_i, a sawtooth of ``teeth`` teeth
    with amplitude |I_i| starting and ending at 0. Every n x n partition of
    the |I_i| x |I_i| square anchored at (a_i, 0) is full when n divides
    ``teeth``.
    """
    if levels < 1:
        raise InvalidArgument('levels must be >= 1')
    if teeth < 2 or teeth % 2:
        raise InvalidArgument('teeth must be a positive even number, got {}'.format(teeth))
    ts, xs = [np.zeros(1)], [np.zeros(1)]
    for a, b in dyadic_intervals(levels):
        tooth = sawtooth_graph(teeth, t0=a, width=b - a, height=b - a)
        ts.append(tooth.t[1:])
        xs.append(tooth.x[1:])
    return Graph2D(np.concatenate(ts), np.concatenate(xs))
