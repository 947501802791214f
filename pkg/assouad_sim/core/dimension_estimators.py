"""
Experiments built on the counting primitives: box-dimension fits, Assouad
exponent profiles, full-window searches, the threading probability P(n),
zigzag scans and trail counting for d-dimensional Brownian motion.
"""

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from assouad_sim.core.decorators import debug_it
from assouad_sim.core.errors import InvalidArgument, Unsupported
from assouad_sim.core.graph_geometry import (
    Graph2D, GraphColumns, Polyline, Window, box_count, build_graph, count_cover,
    count_window, dyadic_intervals)
from assouad_sim.core.process_sim import fgn_autocovariance, generate
from assouad_sim.core.rng import check_seed, derive_seed
from assouad_sim.core.workers import ReplicaPool

log = logging.getLogger(__name__)

MIN_FIT_SCALES = 4
MIN_QUADRATURE_BINS = 50
PN_RULES = ('lower', 'midpoint')
CONFIDENCE = 0.95
TRAIL_DIMENSIONS = (2, 3)


###############################################################################
#                Box dimension
###############################################################################

@dataclass(frozen=True)
class DimensionFit(object):
    """Least squares line through (log 1/r, log N(r)); intercept is log C."""

    scales: tuple
    counts: tuple
    slope: float
    intercept: float
    r_squared: float

    @classmethod
    def from_counts(cls, scales, counts):
        scales = tuple(float(r) for r in scales)
        counts = tuple(int(c) for c in counts)
        if len(scales) != len(counts):
            raise InvalidArgument('scales and counts differ in length')
        if len(scales) < MIN_FIT_SCALES:
            raise InvalidArgument('a dimension fit needs at least {} scales, got {}'.format(
                MIN_FIT_SCALES, len(scales)))
        if min(counts) < 1:
            raise InvalidArgument('cannot fit scales with empty counts: {}'.format(counts))
        fit = stats.linregress(-np.log(scales), np.log(counts))
        return cls(scales, counts, float(fit.slope), float(fit.intercept),
                   float(min(fit.rvalue ** 2, 1.0)))

    def to_dict(self):
        data = asdict(self)
        data['scales'] = list(self.scales)
        data['counts'] = list(self.counts)
        return data


def default_scale_range(vertex_count):
    """Dyadic exponents skipping the two coarsest and the two finest octaves."""
    finest = int(math.floor(math.log2(max(vertex_count - 1, 1))))
    return 2, finest - 2


def _vertex_count(geometry):
    if isinstance(geometry, Graph2D):
        return geometry.t.size
    if isinstance(geometry, Polyline):
        return geometry.vertices.shape[0]
    return np.asarray(geometry).shape[0]


@debug_it
def box_dimension(geometry, j_min=None, j_max=None):
    """Fit of N(2**-j) over j = j_min..j_max on the origin-aligned grid."""
    if j_min is None or j_max is None:
        default_min, default_max = default_scale_range(_vertex_count(geometry))
        j_min = default_min if j_min is None else j_min
        j_max = default_max if j_max is None else j_max
    if j_max - j_min < MIN_FIT_SCALES - 1:
        raise InvalidArgument('scale range {}..{} holds fewer than {} scales'.format(
            j_min, j_max, MIN_FIT_SCALES))
    scales = [2.0 ** -j for j in range(j_min, j_max + 1)]
    counts = [box_count(geometry, r) for r in scales]
    fit = DimensionFit.from_counts(scales, counts)
    log.info('box dimension over j=%d..%d: slope %.4f (r^2 %.4f)',
             j_min, j_max, fit.slope, fit.r_squared)
    return fit


###############################################################################
#                Assouad profiles
###############################################################################

@dataclass(frozen=True)
class ProfileRecord(object):
    anchor_t: float
    anchor_x: float
    R: float
    r: float
    count: int
    exponent: float

    FIELDS = ('anchor_t', 'anchor_x', 'R', 'r', 'N', 'exponent')

    def to_row(self):
        return (self.anchor_t, self.anchor_x, self.R, self.r, self.count, self.exponent)


@dataclass(frozen=True)
class AssouadProfile(object):
    records: tuple
    ratios: tuple
    depth: int

    @property
    def witness(self):
        return max(self.records, key=lambda record: record.exponent)

    @property
    def max_exponent(self):
        return self.witness.exponent

    def to_dict(self):
        return {'max_exponent': self.max_exponent,
                'witness': asdict(self.witness),
                'records': len(self.records),
                'ratios': list(self.ratios),
                'depth': self.depth}


def local_exponent(count, center, R, r):
    """
    log N / log M, with M the largest number of grid cells the ball spans
    along one axis; since N <= M**d the exponent never exceeds d.
    """
    if count < 1:
        return 0.0
    spans = [math.floor((c + R) / r) - math.ceil((c - R) / r) + 2 for c in center]
    return math.log(count) / math.log(max(spans))


def _values_at(g, ts):
    if np.all(np.diff(g.t) > 0):
        return np.interp(ts, g.t, g.x)
    return np.array([g.value_at(t) for t in ts])


def anchor_times(g, anchor_spacing=2.0 ** -10, exhaustive=False):
    if exhaustive:
        return np.unique(g.t)
    t0, t1 = g.t[0], g.t[-1]
    count = int(math.floor((t1 - t0) / anchor_spacing + 1e-9)) + 1
    return t0 + anchor_spacing * np.arange(count)


@debug_it
def assouad_profile(g, anchors=None, ratios=(16, 32, 64), depth=6,
                    anchor_spacing=2.0 ** -10, exhaustive=False, min_ratio=16, workers=1):
    """
    count_cover at every anchor (a time on the graph) for the outer scales
    R = 2**-k, k = 1..depth, and inner scales r = R/ratio.
    """
    if not isinstance(g, Graph2D):
        raise InvalidArgument('assouad profiles are computed on graphs')
    ratios = tuple(sorted(float(q) for q in ratios))
    if not ratios or ratios[0] < min_ratio:
        raise InvalidArgument('every ratio R/r must be >= {}, got {}'.format(min_ratio, ratios))
    if depth < 1:
        raise InvalidArgument('depth must be >= 1, got {}'.format(depth))
    ts = anchor_times(g, anchor_spacing, exhaustive) if anchors is None else \
        np.asarray(anchors, dtype=float)
    if not ts.size or ts.min() < g.t[0] or ts.max() > g.t[-1]:
        raise InvalidArgument('anchors must lie on the graph over [{}, {}]'.format(
            g.t[0], g.t[-1]))
    xs = _values_at(g, ts)

    pairs = [(2.0 ** -k, 2.0 ** -k / q) for k in range(1, depth + 1) for q in ratios]
    columns = {r: GraphColumns(g, r) for r in sorted({r for _, r in pairs})}
    log.info('assouad profile: %d anchors x %d scale pairs', ts.size, len(pairs))

    def profile_anchor(index):
        center = (ts[index], xs[index])
        records = []
        for R, r in pairs:
            count = columns[r].count_ball(center, R)
            records.append(ProfileRecord(float(center[0]), float(center[1]), R, r, count,
                                         local_exponent(count, center, R, r)))
        return records

    per_anchor = ReplicaPool(workers, name='anchors').map(profile_anchor, range(ts.size))
    profile = AssouadProfile(tuple(record for records in per_anchor for record in records),
                             ratios, depth)
    log.info('assouad profile: max exponent %.4f', profile.max_exponent)
    return profile


###############################################################################
#                Full windows
###############################################################################

def dyadic_window_plan(g, n, beta, levels):
    """
    Windows anchored at (a_i, X(a_i)) with sides |I_i| x |I_i|**(1/beta) and
    n x n cells, for the dyadic intervals I_i inside the graph's range.
    Any positive index works; fBm paths use beta = 1/h.
    """
    if n < 1 or levels < 1:
        raise InvalidArgument('n and levels must be >= 1')
    if not beta > 0:
        raise InvalidArgument('beta must be positive, got {}'.format(beta))
    windows = []
    for a, b in dyadic_intervals(levels):
        if a < g.t[0] or b > g.t[-1]:
            break
        length = b - a
        windows.append(Window((a, g.value_at(a)), (length, length ** (1.0 / beta)), (n, n)))
    return windows


def window_coverage(g, w):
    """N(B(anchor, R_1) cap G, R_1/n_1), the scaled covering count of a window."""
    return count_cover(g, w.anchor, w.sides[0], w.sides[0] / w.subdivisions[0])


@debug_it
def full_window_search(g, windows, threshold=1.0, workers=1):
    """Windows with count >= threshold * cells, by occupancy fraction descending."""
    if not 0 < threshold <= 1:
        raise InvalidArgument('threshold must lie in (0, 1], got {}'.format(threshold))
    windows = list(windows)
    results = ReplicaPool(workers, name='windows').map(lambda w: count_window(g, w), windows)
    hits = [(w, result) for w, result in zip(windows, results)
            if result.count >= threshold * w.cell_count - 1e-9]
    return sorted(hits, key=lambda hit: -hit[1].fraction)


@dataclass(frozen=True)
class SearchFrequency(object):
    frequency: float
    paths: int
    hits: tuple

    def to_dict(self):
        return {'frequency': self.frequency, 'paths': self.paths, 'hits': list(self.hits)}


def search_frequency(spec, n, levels, replicas, seed, n_steps=2 ** 12, threshold=1.0,
                     workers=1):
    """Fraction of simulated paths whose dyadic window plan has a hit."""
    if replicas < 1:
        raise InvalidArgument('replicas must be >= 1')
    check_seed(seed)
    beta = spec.scaling_index
    if beta is None:
        raise Unsupported('{} paths have no scaling index'.format(spec.family))

    def search_one(replica):
        g = build_graph(generate(spec, n_steps, derive_seed(seed, replica=replica)))
        return len(full_window_search(g, dyadic_window_plan(g, n, beta, levels), threshold))

    hits = tuple(ReplicaPool(workers, name='search').map(search_one, range(replicas)))
    return SearchFrequency(sum(1 for h in hits if h) / replicas, replicas, hits)


###############################################################################
#                Threading probability P(n)
###############################################################################

@dataclass(frozen=True)
class ThreadingReport(object):
    n: int
    mc_frequency: float
    ci_low: float
    ci_high: float
    replicas: int
    quadrature_bound: float
    full_window_frequency: float

    def to_dict(self):
        return asdict(self)


def wilson_interval(successes, trials, confidence=CONFIDENCE):
    z = stats.norm.ppf(0.5 + confidence / 2)
    p = successes / trials
    denominator = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denominator
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denominator
    return max(centre - half, 0.0), min(centre + half, 1.0)


def default_pn_steps(n):
    """n**2 times a power of two, with at least 8 and 256 steps per threading time."""
    per_time = max(8, 2 ** max(0, math.ceil(math.log2(256 / (n * n)))))
    return n * n * per_time


def threading_times(n, n_steps):
    """Grid indices nearest to t_k = k/n**2, k = 1..n**2, and the largest time offset."""
    k = np.arange(1, n * n + 1)
    indices = np.rint(k * n_steps / (n * n)).astype(np.int64)
    slack = float(np.max(np.abs(indices / n_steps - k / (n * n))))
    return k, indices, slack


def threading_event(values, n, indices, k):
    """X(t_k) lies in row D(k mod n) = [(k mod n)/n, (k mod n + 1)/n] for every k."""
    rows = k % n
    x = values[indices]
    return bool(np.all((x >= rows / n) & (x <= (rows + 1) / n)))


@debug_it
def empirical_pn(spec, n, replicas, seed, n_steps=None, workers=1, bins=400):
    """
    Monte-Carlo frequencies of the threading event and of the full n x n
    window on the unit square, with Wilson intervals for the former.
    """
    if n < 2:
        raise InvalidArgument('n must be >= 2, got {}'.format(n))
    if replicas < 100:
        raise InvalidArgument('empirical P(n) needs >= 100 replicas, got {}'.format(replicas))
    check_seed(seed)
    n_steps = default_pn_steps(n) if n_steps is None else int(n_steps)
    if n_steps < 8 * n * n:
        raise InvalidArgument('grid step 1/{} is coarser than 1/(8 n^2) for n={}'.format(
            n_steps, n))
    k, indices, slack = threading_times(n, n_steps)
    if slack:
        log.warning('threading times are off the grid by up to %g', slack)
    unit = Window.square((0.0, 0.0), 1.0, n)

    def replica(index):
        path = generate(spec, n_steps, derive_seed(seed, replica=index))
        threaded = threading_event(path.coordinate(0), n, indices, k)
        full = count_window(build_graph(path), unit).count == n * n
        return threaded, full

    log.info('P(%d): %d replicas of %d steps', n, replicas, n_steps)
    outcomes = ReplicaPool(workers, name='pn').map(replica, range(replicas))
    threaded = sum(1 for t, _ in outcomes if t)
    full = sum(1 for _, f in outcomes if f)
    ci_low, ci_high = wilson_interval(threaded, replicas)
    bound = pn_quadrature_bound(spec, n, bins) if spec.family == 'wiener' else None
    return ThreadingReport(n, threaded / replicas, ci_low, ci_high, replicas, bound,
                           full / replicas)


@debug_it
def pn_quadrature_bound(spec, n, bins=400, rule='lower'):
    """
    Probability of the threading event for a Wiener path, by propagating
    mass through the rows D(k mod n) with the Gaussian transition kernel of
    variance 1/n**2. ``lower`` moves each bin with the smaller of its
    endpoint transition probabilities, which bounds the event from below;
    ``midpoint`` uses the bin centre.
    """
    if spec.family != 'wiener':
        raise Unsupported('the quadrature needs a closed-form Gaussian kernel, '
                          'not a {} path'.format(spec.family))
    if n < 1:
        raise InvalidArgument('n must be >= 1, got {}'.format(n))
    if bins < MIN_QUADRATURE_BINS:
        raise InvalidArgument('bins must be >= {}, got {}'.format(MIN_QUADRATURE_BINS, bins))
    if rule not in PN_RULES:
        raise InvalidArgument('unknown quadrature rule {!r}'.format(rule))
    sigma = 1.0 / n
    fine = np.arange(bins + 1) / (bins * n)

    def edges(row):
        return row / n + fine

    mass = np.diff(stats.norm.cdf(edges(1 % n) / sigma))
    for k in range(2, n * n + 1):
        source, target = edges((k - 1) % n), edges(k % n)
        if rule == 'lower':
            points = source
        else:
            points = (source[:-1] + source[1:]) / 2
        kernel = (stats.norm.cdf((target[None, 1:] - points[:, None]) / sigma)
                  - stats.norm.cdf((target[None, :-1] - points[:, None]) / sigma))
        if rule == 'lower':
            kernel = np.minimum(kernel[:-1], kernel[1:])
        mass = mass @ kernel
    return float(np.clip(mass.sum(), 0.0, 1.0))


###############################################################################
#                Zigzags
###############################################################################

@dataclass(frozen=True)
class ZigzagResult(object):
    holds: bool
    increments: tuple
    interval: tuple
    threshold: float
    snapped: bool

    def to_dict(self):
        return asdict(self)


def _zigzag_signs(n):
    return np.where(np.arange(n) % 2 == 0, 1.0, -1.0)


def zigzag_scan(path, interval, n, coordinate=0):
    """
    Whether the n increments over equal parts of ``interval`` alternate in
    sign (positive first) with magnitudes >= |interval|**(1/2). Interval
    ends and cut points are moved to the nearest grid times.
    """
    if n < 2:
        raise InvalidArgument('n must be >= 2, got {}'.format(n))
    a, b = interval
    t0, t1 = path.times[0], path.times[-1]
    if not t0 <= a < b <= t1:
        raise InvalidArgument('interval [{}, {}] is not inside [{}, {}]'.format(a, b, t0, t1))
    ka = int(np.rint((a - t0) / path.delta))
    kb = int(np.rint((b - t0) / path.delta))
    if kb - ka < n:
        raise InvalidArgument('interval [{}, {}] spans fewer than {} grid steps'.format(a, b, n))
    cuts = ka + np.rint(np.arange(n + 1) * (kb - ka) / n).astype(np.int64)
    snapped = bool(path.times[ka] != a or path.times[kb] != b or (kb - ka) % n)
    if snapped:
        log.warning('zigzag interval [%g, %g] snapped to grid [%g, %g]',
                    a, b, path.times[ka], path.times[kb])
    increments = np.diff(path.coordinate(coordinate)[cuts])
    threshold = float((path.times[kb] - path.times[ka]) ** 0.5)
    holds = bool(np.all(_zigzag_signs(n) * increments >= threshold))
    return ZigzagResult(holds, tuple(float(i) for i in increments),
                        (float(path.times[ka]), float(path.times[kb])), threshold, snapped)


@dataclass(frozen=True)
class ZigzagEstimate(object):
    frequency: float
    successes: int
    samples: int
    ci_low: float
    ci_high: float

    def to_dict(self):
        return asdict(self)


def _intervals_per_path(interval_length):
    count = int(round(1.0 / interval_length))
    if count < 1 or abs(count * interval_length - 1.0) > 1e-9:
        raise InvalidArgument('1/interval_length must be an integer, got {}'.format(
            interval_length))
    return count


def zigzag_frequency(spec, interval_length, n, samples, seed, workers=1):
    """
    Monte-Carlo zigzag frequency over disjoint intervals [jL, (j+1)L] of
    consecutive simulated paths; each path has one grid step per part.
    """
    if n < 2 or samples < 1:
        raise InvalidArgument('need n >= 2 and samples >= 1')
    check_seed(seed)
    per_path = _intervals_per_path(interval_length)
    paths = -(-samples // per_path)
    threshold = interval_length ** 0.5
    signs = _zigzag_signs(n)

    def scan(replica):
        path = generate(spec, per_path * n, derive_seed(seed, replica=replica))
        increments = path.increments().reshape(per_path, n)
        return np.all(signs * increments >= threshold, axis=1)

    holds = np.concatenate(ReplicaPool(workers, name='zigzag').map(scan, range(paths)))
    successes = int(np.sum(holds[:samples]))
    ci_low, ci_high = wilson_interval(successes, samples)
    return ZigzagEstimate(successes / samples, successes, samples, ci_low, ci_high)


def zigzag_probability(spec, interval_length, n):
    """Gaussian orthant/tail probability of the zigzag event."""
    if n < 1 or not interval_length > 0:
        raise InvalidArgument('need n >= 1 and a positive interval length')
    step = interval_length / n
    if spec.family == 'wiener':
        cov = np.eye(n) * step
    elif spec.family == 'fbm':
        lags = np.subtract.outer(np.arange(n), np.arange(n))
        cov = step ** (2 * spec.hurst) * fgn_autocovariance(spec.hurst, lags)
    else:
        raise Unsupported('zigzag probabilities need Gaussian increments, not {}'.format(
            spec.family))
    signs = _zigzag_signs(n)
    cov = cov * np.outer(signs, signs)
    threshold = interval_length ** 0.5
    if np.allclose(cov, np.diag(np.diag(cov))):
        return float(np.prod(stats.norm.sf(threshold / np.sqrt(np.diag(cov)))))
    dist = stats.multivariate_normal(mean=np.zeros(n), cov=cov, seed=0)
    return float(dist.cdf(-threshold * np.ones(n)))


###############################################################################
#                Trails
###############################################################################

def _trail(path):
    if path.dim > max(TRAIL_DIMENSIONS):
        raise Unsupported('trail counting is limited to d <= {}, got d={}'.format(
            max(TRAIL_DIMENSIONS), path.dim))
    if path.dim not in TRAIL_DIMENSIONS:
        raise InvalidArgument('trails need a path with d in {}, got d={}'.format(
            TRAIL_DIMENSIONS, path.dim))
    if path.spec.family not in ('bm_d', 'deterministic'):
        raise InvalidArgument('trails are drawn by bm_d paths, got {}'.format(path.spec.family))
    return Polyline(path.values)


def trail_count(path, w):
    """Occupancy of a d-dimensional window by the trail X([0, 1])."""
    return count_window(_trail(path), w)


@debug_it
def trail_box_dimension(path, j_min=None, j_max=None):
    return box_dimension(_trail(path), j_min, j_max)
