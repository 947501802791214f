#!/usr/bin/env python

"""Tests for the path generators, stochastic integrals and covariations."""

import numpy as np
import pytest
from scipy import stats

from assouad_sim.core import process_sim
from assouad_sim.core.errors import AssouadSimError, EmbeddingError, InvalidArgument
from assouad_sim.core.process_sim import (
    Integrand, ProcessSpec, SamplePath, gen_bm_d, gen_fbm, gen_stable, gen_wiener,
    generate, integral_by_parts, ito_integral, parts_residual, quadratic_covariation,
    unit_grid)
from assouad_sim.core.rng import derive_seed
from assouad_sim.core.workers import ReplicaPool

__docformat__ = 'restructuredtext'


def deterministic_path(values):
    values = np.asarray(values, dtype=float)
    n = values.size - 1
    return SamplePath(unit_grid(n), values, 1.0 / n, 0, ProcessSpec.deterministic())


# ---------------------------------------------------------------- specs / paths

def test_spec_requires_exactly_its_parameters():
    with pytest.raises(InvalidArgument):
        ProcessSpec('stable')
    with pytest.raises(InvalidArgument):
        ProcessSpec('wiener', beta=1.0)
    with pytest.raises(InvalidArgument):
        ProcessSpec('levy')
    assert ProcessSpec.stable(2.0).scaling_index == 2.0
    assert ProcessSpec.fbm(0.25).scaling_index == 4.0


def test_spec_parameters_round_trip():
    spec = ProcessSpec.ito_integral(Integrand((1.0, 0.0, 1.0)))
    assert ProcessSpec.from_parameters('ito_integral', spec.parameters) == spec


def test_sample_path_invariants():
    with pytest.raises(InvalidArgument):
        deterministic_path([1.0, 2.0])
    with pytest.raises(AssouadSimError):
        deterministic_path([0.0, np.inf])
    with pytest.raises(InvalidArgument):
        SamplePath([0.0, 0.5, 0.7], [0.0, 1.0, 2.0], 0.5, 0, ProcessSpec.deterministic())
    path = gen_wiener(8, 1)
    with pytest.raises(ValueError):
        path.values[1, 0] = 3.0


def test_integrand_derivative_is_exact():
    f = Integrand((1.0, 0.0, 1.0))
    assert f.derivative.coeffs == (0.0, 2.0)
    assert f.validate() == 1.0
    assert f.max_abs_derivative() == pytest.approx(2.0)
    assert Integrand((-0.5, 1.0)).validate() == -0.5


# ---------------------------------------------------------------- wiener

def test_wiener_starts_at_zero_on_uniform_grid():
    path = gen_wiener(4, seed=123)
    assert path.values.shape == (5, 1)
    assert np.all(path.values[0] == 0)
    assert path.delta == 0.25
    np.testing.assert_array_equal(path.times, [0.0, 0.25, 0.5, 0.75, 1.0])


def test_wiener_rejects_empty_grid():
    with pytest.raises(InvalidArgument):
        gen_wiener(0, seed=1)


def test_wiener_unit_step_is_standard_normal():
    samples = [gen_wiener(1, seed).values[1, 0] for seed in range(10 ** 4)]
    assert stats.kstest(samples, 'norm').pvalue > 0.01


def test_wiener_quadratic_variation_is_one():
    increments = gen_wiener(2 ** 20, seed=11).increments()
    assert 0.9 <= np.sum(increments ** 2) <= 1.1


def test_generators_are_reproducible_across_threads():
    seeds = list(range(16))
    spec = ProcessSpec.fbm(0.7)

    def draw(seed):
        return generate(spec, 256, seed).values

    single = ReplicaPool(1).map(draw, seeds)
    threaded = ReplicaPool(8).map(draw, seeds)
    for a, b in zip(single, threaded):
        np.testing.assert_array_equal(a, b)


# ---------------------------------------------------------------- bm_d

def test_bm_d_coordinates_use_derived_seeds():
    path = gen_bm_d(64, 1, seed=5)
    reference = gen_wiener(64, derive_seed(5, coordinate=0))
    np.testing.assert_array_equal(path.values, reference.values)
    wider = gen_bm_d(64, 3, seed=5)
    np.testing.assert_array_equal(wider.values[:, 0], path.values[:, 0])


def test_bm_d_shape_and_origin():
    path = gen_bm_d(8, 3, seed=2)
    assert path.values.shape == (9, 3)
    assert np.all(path.values[0] == 0)


def test_bm_d_coordinates_are_uncorrelated():
    path = gen_bm_d(10 ** 4, 2, seed=9)
    corr = np.corrcoef(path.increments(0), path.increments(1))[0, 1]
    assert -0.05 <= corr <= 0.05


def test_bm_d_rejects_zero_dimension():
    with pytest.raises(InvalidArgument):
        gen_bm_d(8, 0, seed=1)


# ---------------------------------------------------------------- stable

def test_stable_two_is_gaussian_with_variance_two():
    n = 10 ** 4
    increments = gen_stable(n, 2.0, seed=3).increments()
    assert stats.kstest(increments / np.sqrt(2.0 / n), 'norm').pvalue > 0.01


def test_stable_one_is_cauchy():
    n = 10 ** 4
    increments = gen_stable(n, 1.0, seed=4).increments()
    assert stats.kstest(increments * n, 'cauchy').pvalue > 0.01


@pytest.mark.parametrize('beta', [1.0, 1.5, 2.0])
def test_stable_scaling_law(beta):
    a, samples = 4, 10 ** 4
    # X(t) and a**(-1/beta) X(at) for t one grid step, from independent paths
    single = gen_stable(a * samples, beta, seed=21).increments()[:samples]
    grouped = gen_stable(a * samples, beta, seed=22).increments().reshape(samples, a)
    scaled = a ** (-1.0 / beta) * grouped.sum(axis=1)
    assert stats.ks_2samp(single, scaled).pvalue > 0.01


@pytest.mark.parametrize('beta', [0.0, -1.0, 2.5])
def test_stable_rejects_bad_beta(beta):
    with pytest.raises(InvalidArgument):
        gen_stable(8, beta, seed=1)


# ---------------------------------------------------------------- fbm

def test_fbm_half_is_brownian():
    ends, halves = [], []
    for seed in range(4000):
        values = gen_fbm(64, 0.5, seed).coordinate(0)
        ends.append(values[-1])
        halves.append((values[32], values[64] - values[32]))
    halves = np.array(halves)
    assert 0.9 <= np.var(ends) <= 1.1
    assert -0.05 <= np.cov(halves.T)[0, 1] <= 0.05


def test_fbm_half_matches_wiener_increments():
    fbm = gen_fbm(10 ** 4, 0.5, seed=31).increments()
    wiener = gen_wiener(10 ** 4, seed=32).increments()
    assert stats.ks_2samp(fbm, wiener).pvalue > 0.01


def test_fbm_increment_variance():
    u = 2.0 ** -4
    increments = [gen_fbm(16, 0.3, seed).coordinate(0)[1] for seed in range(10 ** 4)]
    assert np.var(increments) == pytest.approx(u ** 0.6, rel=0.1)


def test_fbm_exact_and_circulant_agree():
    replicas = 1000
    circulant = np.array([gen_fbm(2 ** 10, 0.7, s, method='circulant').coordinate(0)[-1]
                          for s in range(replicas)])
    exact = np.array([gen_fbm(2 ** 10, 0.7, s + replicas, method='exact').coordinate(0)[-1]
                      for s in range(replicas)])
    assert abs(circulant.mean() - exact.mean()) <= 3 * np.sqrt(2.0 / replicas)
    assert abs(circulant.var() - exact.var()) <= 3 * np.sqrt(4.0 / replicas)


def test_fbm_embedding_failure_is_an_error(monkeypatch):
    monkeypatch.setattr(process_sim, 'fgn_autocovariance',
                        lambda hurst, lags: np.where(np.asarray(lags) == 0, 1.0, -0.9))
    with pytest.raises(EmbeddingError):
        gen_fbm(16, 0.7, seed=1, method='circulant')


def test_fbm_auto_falls_back_to_exact(monkeypatch):
    def fail(hurst, n):
        raise EmbeddingError('forced')

    expected = gen_fbm(32, 0.7, seed=8, method='exact')
    monkeypatch.setattr(process_sim, 'circulant_eigenvalues', fail)
    np.testing.assert_array_equal(gen_fbm(32, 0.7, seed=8).values, expected.values)


@pytest.mark.parametrize('hurst', [0.0, 1.0, -0.2])
def test_fbm_rejects_bad_hurst(hurst):
    with pytest.raises(InvalidArgument):
        gen_fbm(8, hurst, seed=1)


# ---------------------------------------------------------------- integrals

def test_ito_with_unit_integrand_is_the_base_path(wiener_path):
    result = ito_integral(Integrand((1.0,)), wiener_path)
    np.testing.assert_array_equal(result.values, wiener_path.values)
    np.testing.assert_array_equal(result.times, wiener_path.times)


def test_ito_matches_left_endpoint_sums(wiener_path):
    f = Integrand((1.0, 0.0, 1.0))
    w = wiener_path.coordinate(0)
    sums = np.concatenate([[0.0], np.cumsum(f(wiener_path.times[:-1]) * np.diff(w))])
    np.testing.assert_allclose(ito_integral(f, wiener_path).coordinate(0), sums, atol=1e-12)


def test_ito_needs_a_wiener_base():
    with pytest.raises(InvalidArgument):
        ito_integral(Integrand((1.0,)), gen_fbm(16, 0.3, seed=1))
    with pytest.raises(InvalidArgument):
        integral_by_parts(Integrand((1.0,)), gen_bm_d(16, 2, seed=1))


def test_ito_isometry():
    f = Integrand((0.0, 1.0))
    ends = [ito_integral(f, gen_wiener(256, seed)).coordinate(0)[-1] for seed in range(10 ** 4)]
    assert np.var(ends) == pytest.approx(1.0 / 3.0, rel=0.1)


def test_parts_with_unit_integrand_is_the_base_path(wiener_path):
    result = integral_by_parts(Integrand((1.0,)), wiener_path)
    np.testing.assert_array_equal(result.values, wiener_path.values)


def test_parts_on_deterministic_base():
    n = 2 ** 10
    base = deterministic_path(unit_grid(n))
    value = integral_by_parts(Integrand((0.0, 1.0)), base).coordinate(0)[-1]
    assert abs(value - 0.5) <= n * (1.0 / n) ** 2


def test_ito_and_parts_converge_under_refinement():
    f = Integrand((1.0, 0.0, 1.0))
    paths = [gen_wiener(2 ** 16, seed) for seed in range(100)]
    deltas, rms = [], []
    for factor in (64, 16, 4, 1):
        residuals = np.concatenate([parts_residual(f, p.coarsen(factor)) for p in paths])
        deltas.append(paths[0].delta * factor)
        rms.append(np.sqrt(np.mean(residuals ** 2)))
    # the gap is -1/2 delta sum f'(t_j) dW_j, first order in delta
    slope = stats.linregress(np.log2(deltas), np.log2(rms)).slope
    assert 0.8 <= slope <= 1.2


# ---------------------------------------------------------------- covariation

@pytest.mark.slow
def test_wiener_bracket_is_t():
    values = [quadratic_covariation(p, p, 1.0)
              for p in (gen_wiener(2 ** 20, seed) for seed in range(100))]
    assert 0.99 <= np.mean(values) <= 1.01


def test_smooth_bracket_is_bounded_by_derivative():
    f = Integrand((1.0, 0.0, 1.0))
    for n in (16, 256, 4096):
        curve = f.sample_path(n)
        assert quadratic_covariation(curve, curve, 1.0) <= f.max_abs_derivative() ** 2 / n


def test_constant_path_has_zero_covariation(wiener_path):
    constant = deterministic_path(np.zeros(wiener_path.n_steps + 1))
    assert quadratic_covariation(constant, wiener_path, 1.0) == 0.0
    assert quadratic_covariation(constant, wiener_path, 0.5) == 0.0


def test_covariation_cauchy_schwarz():
    for seed in range(20):
        a = gen_wiener(512, seed)
        b = ito_integral(Integrand((0.5, -1.0, 3.0)), gen_wiener(512, seed + 100))
        for t in (0.25, 1.0):
            bound = np.sqrt(quadratic_covariation(a, a, t) * quadratic_covariation(b, b, t))
            assert abs(quadratic_covariation(a, b, t)) <= bound * (1 + 1e-12)


def test_smooth_wiener_covariation_shrinks_under_refinement():
    f = Integrand((1.0, 0.0, 1.0))
    curve = f.sample_path(2 ** 16)
    paths = [gen_wiener(2 ** 16, seed) for seed in range(100)]
    means = []
    for factor in (64, 16, 4, 1):
        c = curve.coarsen(factor)
        cc = quadratic_covariation(c, c, 1.0)
        estimates = []
        for path in paths:
            w = path.coarsen(factor)
            fw = quadratic_covariation(c, w, 1.0)
            assert abs(fw) <= np.sqrt(cc * quadratic_covariation(w, w, 1.0)) * (1 + 1e-12)
            estimates.append(abs(fw))
        means.append(np.mean(estimates))
    for coarse, fine in zip(means, means[1:]):
        assert coarse >= 1.5 * fine


def test_covariation_needs_matching_grids_and_grid_times():
    with pytest.raises(InvalidArgument):
        quadratic_covariation(gen_wiener(16, 1), gen_wiener(32, 1), 1.0)
    with pytest.raises(InvalidArgument):
        quadratic_covariation(gen_wiener(16, 1), gen_wiener(16, 2), 0.3)
    with pytest.raises(InvalidArgument):
        quadratic_covariation(gen_wiener(16, 1), gen_wiener(16, 2), 0.0)


def test_coarsen_keeps_every_kth_point(wiener_path):
    coarse = wiener_path.coarsen(4)
    assert coarse.n_steps == wiener_path.n_steps // 4
    np.testing.assert_array_equal(coarse.values, wiener_path.values[::4])
    with pytest.raises(InvalidArgument):
        wiener_path.coarsen(3)
