"""Static SVG figures. They are written after the reports and never feed back into them."""

import logging

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from assouad_sim.core.artifacts import atomic_write  # noqa: E402

log = logging.getLogger(__name__)
logging.getLogger('matplotlib').setLevel(logging.WARNING)

# fixed ids and no timestamp, so equal data gives equal files
matplotlib.rcParams['svg.hashsalt'] = 'assouad-sim'


def _save(fig, path):
    with atomic_write(path) as stream:
        fig.savefig(stream, format='svg', metadata={'Date': None})
    plt.close(fig)
    log.info('plot written to %s', path)


def plot_fit(fit, path, title='box counting'):
    """log N(r) against log 1/r with the fitted line."""
    x = -np.log2(fit.scales)
    y = np.log2(fit.counts)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(x, y, 'o', label='N(r)')
    line = (fit.intercept + fit.slope * x * np.log(2)) / np.log(2)
    ax.plot(x, line, '-', label='slope {:.3f}, r$^2$ {:.4f}'.format(fit.slope, fit.r_squared))
    ax.set_xlabel('log2(1/r)')
    ax.set_ylabel('log2 N(r)')
    ax.set_title(title)
    ax.legend()
    _save(fig, path)


def plot_path(sample, path, title=None):
    fig, ax = plt.subplots(figsize=(6, 3))
    for j in range(sample.dim):
        ax.plot(sample.times, sample.values[:, j], lw=0.5, label='x{}'.format(j + 1))
    ax.set_xlabel('t')
    ax.set_title(title or sample.spec.family)
    if sample.dim > 1:
        ax.legend()
    _save(fig, path)


def plot_profile(profile, path):
    """Local exponents against the outer scale, one marker series per ratio."""
    fig, ax = plt.subplots(figsize=(5, 4))
    records = profile.records
    for ratio in profile.ratios:
        chosen = [rec for rec in records if np.isclose(rec.R / rec.r, ratio)]
        ax.plot([-np.log2(rec.R) for rec in chosen], [rec.exponent for rec in chosen],
                '.', ms=2, label='R/r = {:g}'.format(ratio))
    ax.axhline(profile.max_exponent, color='k', lw=0.5)
    ax.set_xlabel('log2(1/R)')
    ax.set_ylabel('local exponent')
    ax.legend()
    _save(fig, path)
