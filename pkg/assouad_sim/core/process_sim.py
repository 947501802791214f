"""
Sample-path generators on the uniform grid t_k = k/N of [0, 1].

Wiener, d-dimensional Brownian, symmetric beta-stable and fractional
Brownian paths, plus left-endpoint Ito integrals against a stored Wiener
path, the integration-by-parts rendition of the same integral and the
discrete quadratic covariation of two paths.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import linalg
from scipy.integrate import cumulative_trapezoid

from assouad_sim.core.errors import AssouadSimError, EmbeddingError, InvalidArgument
from assouad_sim.core.rng import check_seed, derive_seed, make_generator

log = logging.getLogger(__name__)

FAMILIES = ('wiener', 'bm_d', 'stable', 'fbm', 'ito_integral', 'deterministic')
FBM_METHODS = ('auto', 'circulant', 'exact')

GRID_TOLERANCE = 1e-12
EIGENVALUE_TOLERANCE = 1e-9
EXACT_FBM_MAX_STEPS = 2 ** 12
INTEGRAND_VALIDATION_POINTS = 10 ** 4


@dataclass(frozen=True)
class Integrand(object):
    """Polynomial integrand f(x) = sum_j coeffs[j] x**j."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(float(c) for c in np.atleast_1d(self.coeffs))
        if not coeffs:
            raise InvalidArgument('integrand needs at least one coefficient')
        if not all(np.isfinite(coeffs)):
            raise InvalidArgument('integrand coefficients must be finite')
        object.__setattr__(self, 'coeffs', coeffs)

    def __call__(self, x):
        return P.polyval(x, self.coeffs)

    @property
    def derivative(self):
        return Integrand(tuple(P.polyder(self.coeffs)))

    def validate(self):
        """Minimum of f over 10**4 evenly spaced points of [0, 1]."""
        grid = np.linspace(0.0, 1.0, INTEGRAND_VALIDATION_POINTS)
        return float(np.min(self(grid)))

    def max_abs_derivative(self):
        grid = np.linspace(0.0, 1.0, INTEGRAND_VALIDATION_POINTS)
        return float(np.max(np.abs(self.derivative(grid))))

    def sample_path(self, n_steps):
        """f sampled on the unit grid, shifted so that it starts at 0."""
        times = unit_grid(n_steps)
        values = self(times) - self(0.0)
        return SamplePath(times, values[:, None], 1.0 / n_steps, 0,
                          ProcessSpec.deterministic())


@dataclass(frozen=True)
class ProcessSpec(object):
    family: str
    beta: float = None
    hurst: float = None
    dim: int = None
    integrand: Integrand = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidArgument('unknown process family {!r}, expected one of {}'.format(
                self.family, ', '.join(FAMILIES)))
        required = {'stable': 'beta', 'fbm': 'hurst', 'bm_d': 'dim',
                    'ito_integral': 'integrand'}.get(self.family)
        for name in ('beta', 'hurst', 'dim', 'integrand'):
            present = getattr(self, name) is not None
            if present and name != required:
                raise InvalidArgument('{} is not a parameter of the {} family'.format(
                    name, self.family))
            if not present and name == required:
                raise InvalidArgument('the {} family requires {}'.format(self.family, name))
        if self.beta is not None:
            _check_beta(self.beta)
        if self.hurst is not None:
            _check_hurst(self.hurst)
        if self.dim is not None and (int(self.dim) != self.dim or self.dim < 1):
            raise InvalidArgument('dim must be a positive integer, got {}'.format(self.dim))

    @classmethod
    def wiener(cls):
        return cls('wiener')

    @classmethod
    def bm_d(cls, dim):
        return cls('bm_d', dim=dim)

    @classmethod
    def stable(cls, beta):
        """beta = 2 is the Gaussian member (variance 2 per unit time)."""
        return cls('stable', beta=beta)

    @classmethod
    def fbm(cls, hurst):
        return cls('fbm', hurst=hurst)

    @classmethod
    def ito_integral(cls, integrand):
        return cls('ito_integral', integrand=integrand)

    @classmethod
    def deterministic(cls):
        return cls('deterministic')

    @property
    def scaling_index(self):
        """beta of the beta-scaling property, when the family has one."""
        if self.family in ('wiener', 'bm_d'):
            return 2.0
        if self.family == 'stable':
            return float(self.beta)
        if self.family == 'fbm':
            return 1.0 / self.hurst
        return None

    @property
    def parameters(self):
        params = {}
        if self.beta is not None:
            params['beta'] = self.beta
        if self.hurst is not None:
            params['hurst'] = self.hurst
        if self.dim is not None:
            params['dim'] = self.dim
        if self.integrand is not None:
            params['coeffs'] = list(self.integrand.coeffs)
        return params

    @classmethod
    def from_parameters(cls, family, parameters):
        parameters = dict(parameters or {})
        coeffs = parameters.pop('coeffs', None)
        if coeffs is not None:
            parameters['integrand'] = Integrand(tuple(coeffs))
        return cls(family, **parameters)


@dataclass(frozen=True, eq=False)
class SamplePath(object):
    """
    One path on a uniform grid. ``values`` has one column per coordinate and
    both arrays are read-only after construction.
    """

    times: np.ndarray
    values: np.ndarray
    delta: float
    seed: int
    spec: ProcessSpec

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if times.ndim != 1 or times.size < 1 or values.shape[0] != times.size:
            raise InvalidArgument('times and values must have matching lengths')
        delta = float(self.delta)
        if not delta > 0:
            raise InvalidArgument('grid step must be positive, got {}'.format(delta))
        ideal = times[0] + delta * np.arange(times.size)
        if np.any(np.abs(times - ideal) > GRID_TOLERANCE * np.maximum(np.abs(ideal), delta)):
            raise InvalidArgument('times are not a uniform grid with step {}'.format(delta))
        if not np.all(np.isfinite(values)):
            raise AssouadSimError('path values contain non-finite entries')
        if np.any(values[0] != 0):
            raise InvalidArgument('paths must start at 0, got {}'.format(values[0]))
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, 'times', times)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'delta', delta)
        object.__setattr__(self, 'seed', check_seed(self.seed))

    @classmethod
    def from_increments(cls, increments, delta, seed, spec):
        increments = np.asarray(increments, dtype=float)
        if increments.ndim == 1:
            increments = increments[:, None]
        values = np.zeros((increments.shape[0] + 1, increments.shape[1]))
        np.cumsum(increments, axis=0, out=values[1:])
        return cls(unit_grid(increments.shape[0]), values, delta, seed, spec)

    @property
    def n_steps(self):
        return self.times.size - 1

    @property
    def dim(self):
        return self.values.shape[1]

    def coordinate(self, index=0):
        if not 0 <= index < self.dim:
            raise InvalidArgument('coordinate {} out of range for a {}-dimensional path'.format(
                index, self.dim))
        return self.values[:, index]

    def increments(self, coordinate=0):
        return np.diff(self.coordinate(coordinate))

    def coarsen(self, factor):
        """Every ``factor``-th grid point, i.e. the same path on a coarser grid."""
        factor = int(factor)
        if factor < 1 or self.n_steps % factor:
            raise InvalidArgument('cannot coarsen {} steps by {}'.format(self.n_steps, factor))
        return SamplePath(self.times[::factor], self.values[::factor],
                          self.delta * factor, self.seed, self.spec)

    def grid_index(self, t):
        """Index of grid time ``t``; ``t`` must lie on the grid."""
        k = int(np.rint((t - self.times[0]) / self.delta))
        if not 0 <= k <= self.n_steps or abs(self.times[k] - t) > 1e-9 * self.delta:
            raise InvalidArgument('t={} is not a grid time of this path'.format(t))
        return k

    def metadata(self):
        return {
            'family': self.spec.family,
            'parameters': self.spec.parameters,
            'n_steps': self.n_steps,
            'delta': self.delta,
            'seed': self.seed,
        }


def unit_grid(n_steps):
    return np.arange(n_steps + 1) / n_steps


def _check_steps(n_steps):
    if isinstance(n_steps, bool) or int(n_steps) != n_steps or n_steps < 1:
        raise InvalidArgument('n_steps must be a positive integer, got {!r}'.format(n_steps))
    return int(n_steps)


def _check_beta(beta):
    if not 0 < beta <= 2:
        raise InvalidArgument('beta must lie in (0, 2], got {}'.format(beta))
    return float(beta)


def _check_hurst(hurst):
    if not 0 < hurst < 1:
        raise InvalidArgument('hurst must lie in (0, 1), got {}'.format(hurst))
    return float(hurst)


###############################################################################
#                Generators
###############################################################################

def gen_wiener(n_steps, seed):
    n_steps = _check_steps(n_steps)
    delta = 1.0 / n_steps
    increments = make_generator(seed).standard_normal(n_steps) * np.sqrt(delta)
    return SamplePath.from_increments(increments, delta, seed, ProcessSpec.wiener())


def gen_bm_d(n_steps, d, seed):
    """d independent Wiener coordinates; coordinate j uses derive_seed(seed, 0, j)."""
    n_steps = _check_steps(n_steps)
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise InvalidArgument('d must be a positive integer, got {!r}'.format(d))
    columns = [gen_wiener(n_steps, derive_seed(seed, coordinate=j)).coordinate(0)
               for j in range(int(d))]
    return SamplePath(unit_grid(n_steps), np.column_stack(columns), 1.0 / n_steps,
                      seed, ProcessSpec.bm_d(int(d)))


def unit_stable_variates(beta, rng, size):
    """
    Symmetric beta-stable variates with characteristic function
    exp(-|theta|**beta), drawn with the Chambers-Mallows-Stuck method.
    """
    beta = _check_beta(beta)
    phi = rng.uniform(-np.pi / 2, np.pi / 2, size)
    w = rng.standard_exponential(size)
    if beta == 1.0:
        return np.tan(phi)
    if beta == 2.0:
        return 2.0 * np.sqrt(w) * np.sin(phi)
    with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
        return (np.sin(beta * phi) / np.cos(phi) ** (1.0 / beta)
                * (np.cos((1.0 - beta) * phi) / w) ** ((1.0 - beta) / beta))


def gen_stable(n_steps, beta, seed):
    n_steps = _check_steps(n_steps)
    beta = _check_beta(beta)
    delta = 1.0 / n_steps
    variates = unit_stable_variates(beta, make_generator(seed), n_steps)
    increments = delta ** (1.0 / beta) * variates
    if not np.all(np.isfinite(increments)):
        raise AssouadSimError(
            'stable increments overflow float64 for beta={} (seed {})'.format(beta, seed))
    return SamplePath.from_increments(increments, delta, seed, ProcessSpec.stable(beta))


def fgn_autocovariance(hurst, lags):
    """Covariance of unit-step fractional Gaussian noise at integer ``lags``."""
    k = np.abs(np.asarray(lags, dtype=float))
    h2 = 2.0 * hurst
    return 0.5 * (np.abs(k + 1) ** h2 + np.abs(k - 1) ** h2 - 2.0 * k ** h2)


def circulant_eigenvalues(hurst, n):
    """Eigenvalues of the size-2n circulant embedding of the fGn covariance."""
    gamma = fgn_autocovariance(hurst, np.arange(n + 1))
    row = np.concatenate([gamma, gamma[n - 1:0:-1]])
    eigenvalues = np.fft.fft(row).real
    smallest, largest = eigenvalues.min(), eigenvalues.max()
    if smallest < -EIGENVALUE_TOLERANCE * largest:
        raise EmbeddingError(
            'circulant embedding of fGn (hurst={}, n={}) has eigenvalue {:.3e} '
            '< -{:g} * {:.3e}'.format(hurst, n, smallest, EIGENVALUE_TOLERANCE, largest))
    return np.maximum(eigenvalues, 0.0)


@lru_cache(maxsize=8)
def _fgn_cholesky(hurst, n):
    factor = linalg.cholesky(linalg.toeplitz(fgn_autocovariance(hurst, np.arange(n))),
                             lower=True)
    factor.setflags(write=False)
    return factor


def _fgn_circulant(hurst, n, rng):
    eigenvalues = circulant_eigenvalues(hurst, n)
    m = eigenvalues.size
    z = rng.standard_normal((2, m))
    xi = np.sqrt(eigenvalues / m) * (z[0] + 1j * z[1])
    return np.fft.fft(xi)[:n].real


def _fgn_exact(hurst, n, rng):
    return _fgn_cholesky(hurst, n) @ rng.standard_normal(n)


def gen_fbm(n_steps, hurst, seed, method='auto'):
    """
    Fractional Brownian motion from fractional Gaussian noise.

    ``circulant`` uses the Davies-Harte embedding and fails with
    EmbeddingError on negative eigenvalues; ``exact`` factorizes the Toeplitz
    covariance (n_steps <= 2**12); ``auto`` tries the embedding first and
    falls back to the factorization when it fails on a small grid.
    """
    n_steps = _check_steps(n_steps)
    hurst = _check_hurst(hurst)
    if method not in FBM_METHODS:
        raise InvalidArgument('unknown fbm method {!r}'.format(method))
    if method == 'exact' and n_steps > EXACT_FBM_MAX_STEPS:
        raise InvalidArgument('exact fbm factorization is limited to {} steps'.format(
            EXACT_FBM_MAX_STEPS))
    rng = make_generator(seed)
    if method == 'exact':
        noise = _fgn_exact(hurst, n_steps, rng)
    else:
        try:
            noise = _fgn_circulant(hurst, n_steps, rng)
        except EmbeddingError:
            if method == 'circulant' or n_steps > EXACT_FBM_MAX_STEPS:
                raise
            log.warning('circulant embedding failed for hurst=%s, n=%d; '
                        'using exact factorization', hurst, n_steps)
            noise = _fgn_exact(hurst, n_steps, make_generator(seed))
    delta = 1.0 / n_steps
    return SamplePath.from_increments(delta ** hurst * noise, delta, seed,
                                      ProcessSpec.fbm(hurst))


def generate(spec, n_steps, seed, fbm_method='auto'):
    """Dispatch on ``spec.family``."""
    if spec.family == 'wiener':
        return gen_wiener(n_steps, seed)
    if spec.family == 'bm_d':
        return gen_bm_d(n_steps, spec.dim, seed)
    if spec.family == 'stable':
        return gen_stable(n_steps, spec.beta, seed)
    if spec.family == 'fbm':
        return gen_fbm(n_steps, spec.hurst, seed, method=fbm_method)
    if spec.family == 'ito_integral':
        return ito_integral(spec.integrand, gen_wiener(n_steps, seed))
    raise InvalidArgument('{} paths are not generated, build them directly'.format(
        spec.family))


###############################################################################
#                Stochastic integrals
###############################################################################

def _wiener_base(base):
    # deterministic bases are injected curves such as w(t) = t
    if base.spec.family not in ('wiener', 'deterministic') or base.dim != 1:
        raise InvalidArgument('stochastic integrals need a wiener base path, got {}'.format(
            base.spec.family))
    return base.coordinate(0)


def ito_integral(f, base):
    """
    Left-endpoint sums B_f(t_k) = sum_{j<k} f(t_j) (W(t_{j+1}) - W(t_j)).

    Evaluated in the summed-by-parts form
    f(t_{k-1}) W(t_k) - sum_{j=1}^{k-1} (f(t_j) - f(t_{j-1})) W(t_j),
    which is algebraically the same sum and returns W itself for f == 1.
    """
    w = _wiener_base(base)
    fv = f(base.times)
    values = np.zeros_like(w)
    if w.size > 1:
        terms = np.diff(fv)[:-1] * w[1:-1]
        correction = np.concatenate([[0.0], np.cumsum(terms)])
        values[1:] = fv[:-1] * w[1:] - correction
    return SamplePath(base.times, values[:, None], base.delta, base.seed,
                      ProcessSpec.ito_integral(f))


def integral_by_parts(f, base):
    """f(t) W(t) - int_0^t W(x) f'(x) dx, the integral by trapezoid quadrature."""
    w = _wiener_base(base)
    quadrature = cumulative_trapezoid(w * f.derivative(base.times), base.times, initial=0.0)
    values = f(base.times) * w - quadrature
    values[0] = 0.0
    return SamplePath(base.times, values[:, None], base.delta, base.seed,
                      ProcessSpec.ito_integral(f))


def parts_residual(f, base):
    """Ito sums minus the by-parts rendition, at every grid point."""
    return ito_integral(f, base).coordinate(0) - integral_by_parts(f, base).coordinate(0)


def quadratic_covariation(a, b, t=1.0, coordinate=0):
    """Sum of products of increments of ``a`` and ``b`` over the grid up to ``t``."""
    if a.times.shape != b.times.shape or not np.array_equal(a.times, b.times):
        raise InvalidArgument('quadratic covariation needs identical grids')
    if not 0 < t <= a.times[-1]:
        raise InvalidArgument('t must lie in (0, {}], got {}'.format(a.times[-1], t))
    k = a.grid_index(t)
    da = np.diff(a.coordinate(coordinate)[:k + 1])
    db = np.diff(b.coordinate(coordinate)[:k + 1])
    return float(np.sum(da * db))
