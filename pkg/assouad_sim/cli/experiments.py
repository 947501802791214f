"""
Command line front end: ``assouad-sim <command> [options]``.

Every command resolves an ExperimentConfig, writes its report(s) and a
``config.json`` into ``--out`` and prints the report paths. Failures write one
JSON object ``{"error": ..., "message": ...}`` on stderr and exit with status
1, or 2 for command line usage errors.
"""

import json
import logging
import math
import os
import sys
from functools import wraps

import click
import numpy as np
from click.core import ParameterSource

from assouad_sim.cli.config import (
    DefaultValue, Description, ExperimentConfig, FIXTURES, Type, config_properties,
    runtime_properties)
from assouad_sim.core.artifacts import (
    read_path, read_windows, write_json, write_path, write_profile, write_windows)
from assouad_sim.core.decorators import handle_error
from assouad_sim.core.dimension_estimators import (
    assouad_profile, box_dimension, dyadic_window_plan, empirical_pn, full_window_search,
    search_frequency, trail_box_dimension, window_coverage)
from assouad_sim.core.errors import ArtifactError, AssouadSimError, InvalidArgument
from assouad_sim.core.graph_geometry import (
    build_graph, full_window_graph, line_graph, sawtooth_graph)
from assouad_sim.core.process_sim import (
    FAMILIES, FBM_METHODS, Integrand, gen_bm_d, generate, parts_residual,
    quadratic_covariation)

log = logging.getLogger('assouad_sim.cli')

LOG_FORMAT = "%(asctime)-15s %(levelname)-5s %(name)s: %(message)s"
DEFAULT_STEPS = 2 ** 16
FULL_WINDOW_STEPS = 2 ** 12
MIN_REFINED_STEPS = 16

OPTION_FLAGS = {
    'n': ('-n', '--subdivisions'),
    'coeffs': ('--coeff',),
    'ratios': ('--ratio',),
    't': ('--horizon',),
}
OPTION_CHOICES = {
    'process': FAMILIES,
    'fbm_method': FBM_METHODS,
    'fixture': FIXTURES,
}
PROCESS_OPTIONS = ('process', 'beta', 'hurst', 'dim', 'coeffs', 'fbm_method', 'steps', 'seed')
COMMON_OPTIONS = ('out', 'emit_plots', 'workers', 'debug')


def config_option(name):
    prop = config_properties.get(name) or runtime_properties[name]
    flags = OPTION_FLAGS.get(name, ('--' + name.replace('_', '-'),))
    kind = prop[Type]
    kwargs = {'help': prop[Description]}
    if kind is bool:
        kwargs.update(is_flag=True, default=False)
    elif isinstance(kind, list):
        kwargs.update(type=kind[0], multiple=True)
    else:
        kwargs.update(type=click.Choice(OPTION_CHOICES[name]) if name in OPTION_CHOICES
                      else kind, default=None)
        if prop[DefaultValue] is not None:
            kwargs['help'] += ' [default: {}]'.format(prop[DefaultValue])
    return click.option(*flags, name, **kwargs)


def with_options(*names):
    def decorator(func):
        func = click.option('--config', 'config', type=click.Path(dir_okay=False),
                            help='JSON configuration; command line flags win')(func)
        for name in reversed(names + COMMON_OPTIONS):
            func = config_option(name)(func)
        return func
    return decorator


def echo_error(name, message):
    click.echo(json.dumps({'error': name, 'message': message}), err=True)


def report_errors(func):
    """Exit 1 with a JSON error object on stderr for every package error."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AssouadSimError as e:
            log.debug('command failed', exc_info=True)
            echo_error(type(e).__name__, str(e))
            sys.exit(1)
    return wrapper


class ExperimentGroup(click.Group):
    """Reports click usage errors as JSON objects too, keeping their exit code."""

    def main(self, *args, standalone_mode=True, **kwargs):
        if not standalone_mode:
            return super().main(*args, standalone_mode=False, **kwargs)
        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as e:
            echo_error(type(e).__name__, e.format_message())
            sys.exit(e.exit_code)
        except click.Abort:
            echo_error('Abort', 'aborted')
            sys.exit(1)


def setup_logging(debug):
    level = logging.DEBUG if debug else logging.INFO
    logging.basicConfig(format=LOG_FORMAT, level=level)
    logging.getLogger('assouad_sim').setLevel(level)


def resolve_config(ctx, command, params):
    """Defaults, then the --config file, then flags given on the command line."""
    config_file = params.pop('config', None)
    config = ExperimentConfig.load(config_file) if config_file else ExperimentConfig()
    given = {name: value for name, value in params.items()
             if ctx.get_parameter_source(name) in (ParameterSource.COMMANDLINE,
                                                   ParameterSource.ENVIRONMENT)}
    return config.merged(command=command, **given)


def start(ctx, command, params):
    config = resolve_config(ctx, command, params)
    setup_logging(config.debug)
    try:
        os.makedirs(config.out, exist_ok=True)
    except OSError as e:
        raise ArtifactError('cannot create output directory {}: {}'.format(config.out, e)) from e
    log.info('%s: %s', command, config.to_dict())
    return config


def finish(config, *reports):
    write_json(output(config, 'config.json'), config.to_dict())
    for report in reports:
        click.echo(report)


def output(config, name):
    return os.path.join(config.out, name)


def load_path(config, default_steps=DEFAULT_STEPS):
    if config.input:
        return read_path(config.input)
    return generate(config.process_spec(), config.steps or default_steps, config.seed,
                    fbm_method=config.fbm_method)


def load_graph(config, default_steps=DEFAULT_STEPS):
    if config.fixture == 'line':
        return line_graph()
    if config.fixture == 'zigzag':
        return sawtooth_graph(config.n)
    if config.fixture == 'full-window':
        return full_window_graph(config.levels)
    return build_graph(load_path(config, default_steps))


def scaling_index(config):
    if config.beta is not None:
        return config.beta
    if config.fixture or config.input:
        return 1.0 if config.fixture else 2.0
    index = config.process_spec().scaling_index
    if index is None:
        raise InvalidArgument('no window heights for {} paths, pass --beta'.format(
            config.process))
    return index


@click.group(cls=ExperimentGroup)
@click.version_option(package_name='assouad-sim')
def main():
    """Simulate Levy, fractional and Ito paths and estimate their dimensions."""


@main.command()
@with_options(*PROCESS_OPTIONS)
@click.pass_context
@report_errors
@handle_error(msg='simulate failed')
def simulate(ctx, **params):
    """Write one sample path as CSV plus a metadata sidecar."""
    config = start(ctx, 'simulate', params)
    sample = load_path(config)
    report = output(config, 'path.csv')
    write_path(report, sample)
    if config.emit_plots:
        from assouad_sim.cli.plots import plot_path
        plot_path(sample, output(config, 'path.svg'))
    finish(config, report)


@main.command()
@with_options(*PROCESS_OPTIONS + ('input', 'fixture', 'n', 'levels', 'j_min', 'j_max'))
@click.pass_context
@report_errors
@handle_error(msg='boxdim failed')
def boxdim(ctx, **params):
    """Box-counting dimension of a graph."""
    config = start(ctx, 'boxdim', params)
    fit = box_dimension(load_graph(config), config.j_min, config.j_max)
    report = output(config, 'boxdim.json')
    write_json(report, fit.to_dict())
    if config.emit_plots:
        from assouad_sim.cli.plots import plot_fit
        plot_fit(fit, output(config, 'boxdim.svg'))
    finish(config, report)


@main.command()
@with_options(*PROCESS_OPTIONS + ('input', 'fixture', 'n', 'levels', 'ratios', 'depth',
                                  'anchor_spacing', 'exhaustive'))
@click.pass_context
@report_errors
@handle_error(msg='assouad failed')
def assouad(ctx, **params):
    """Assouad exponent profile: records as CSV, summary as JSON."""
    config = start(ctx, 'assouad', params)
    profile = assouad_profile(load_graph(config), ratios=config.ratios, depth=config.depth,
                              anchor_spacing=config.anchor_spacing,
                              exhaustive=config.exhaustive, workers=config.workers)
    records, summary = output(config, 'assouad.csv'), output(config, 'assouad.json')
    write_profile(records, profile)
    write_json(summary, profile.to_dict())
    if config.emit_plots:
        from assouad_sim.cli.plots import plot_profile
        plot_profile(profile, output(config, 'assouad.svg'))
    finish(config, records, summary)


@main.command()
@with_options(*PROCESS_OPTIONS + ('input', 'fixture', 'windows', 'n', 'levels', 'threshold',
                                  'replicas'))
@click.pass_context
@report_errors
@handle_error(msg='fullwindow failed')
def fullwindow(ctx, **params):
    """
    Full-window search over a window list or the dyadic window plan. Without
    an input geometry and with more than one replica, reports the fraction of
    simulated paths with a hit.
    """
    config = start(ctx, 'fullwindow', params)
    report = output(config, 'fullwindow.json')
    single = config.input or config.fixture or config.windows or config.replicas == 1
    if not single:
        frequency = search_frequency(config.process_spec(), config.n, config.levels,
                                     config.replicas, config.seed,
                                     config.steps or FULL_WINDOW_STEPS, config.threshold,
                                     config.workers)
        write_json(report, dict(frequency.to_dict(), threshold=config.threshold))
        finish(config, report)
        return
    g = load_graph(config, FULL_WINDOW_STEPS)
    if config.windows:
        windows = read_windows(config.windows)
    else:
        windows = dyadic_window_plan(g, config.n, scaling_index(config), config.levels)
    plan = output(config, 'windows.json')
    write_windows(plan, windows)
    hits = full_window_search(g, windows, config.threshold, config.workers)
    write_json(report, {
        'threshold': config.threshold,
        'windows': len(windows),
        'hits': [dict(result.to_dict(), window=w.to_dict(), coverage=window_coverage(g, w))
                 for w, result in hits],
    })
    finish(config, plan, report)


@main.command()
@with_options(*PROCESS_OPTIONS + ('n', 'replicas', 'bins'))
@click.pass_context
@report_errors
@handle_error(msg='pn failed')
def pn(ctx, **params):
    """Threading probability P(n): Monte-Carlo frequencies and quadrature bound."""
    config = start(ctx, 'pn', params)
    result = empirical_pn(config.process_spec(), config.n, config.replicas, config.seed,
                          n_steps=config.steps, workers=config.workers, bins=config.bins)
    report = output(config, 'pn.json')
    write_json(report, result.to_dict())
    finish(config, report)


def covariation_row(base, curve, t, factor):
    w, f = base.coarsen(factor), curve.coarsen(factor)
    ww = quadratic_covariation(w, w, t)
    ff = quadratic_covariation(f, f, t)
    fw = quadratic_covariation(f, w, t)
    return {'factor': factor, 'delta': w.delta, 'ww': ww, 'ff': ff, 'fw': fw,
            'bound': math.sqrt(ff * ww)}


@main.command()
@with_options(*PROCESS_OPTIONS + ('input', 't'))
@click.pass_context
@report_errors
@handle_error(msg='qv failed')
def qv(ctx, **params):
    """[W,W], [f,f] and [f,W] of a Wiener path, on the path grid and coarsened by 4^k."""
    config = start(ctx, 'qv', params)
    base = load_path(config)
    f = Integrand(tuple(config.integrand_coeffs()))
    curve = f.sample_path(base.n_steps)
    # the path grid itself, then coarsenings that keep MIN_REFINED_STEPS steps
    factors = [1] + [4 ** k for k in range(1, 4) if base.n_steps % 4 ** k == 0
                     and base.n_steps // 4 ** k >= MIN_REFINED_STEPS]
    rows = [covariation_row(base, curve, config.t, factor) for factor in factors]
    residual = parts_residual(f, base)
    report = output(config, 'qv.json')
    write_json(report, dict(rows[0], t=config.t, coeffs=list(f.coeffs),
                            parts_residual_rms=float(np.sqrt(np.mean(residual ** 2))),
                            refinements=rows))
    finish(config, report)


@main.command()
@with_options('dim', 'steps', 'seed', 'j_min', 'j_max')
@click.pass_context
@report_errors
@handle_error(msg='trail failed')
def trail(ctx, **params):
    """Box-counting dimension of the trail of a d-dimensional Brownian motion."""
    config = start(ctx, 'trail', params)
    path = gen_bm_d(config.steps or DEFAULT_STEPS, config.dim or 2, config.seed)
    fit = trail_box_dimension(path, config.j_min, config.j_max)
    report = output(config, 'trail.json')
    write_json(report, fit.to_dict())
    if config.emit_plots:
        from assouad_sim.cli.plots import plot_fit
        plot_fit(fit, output(config, 'trail.svg'), title='trail box counting')
    finish(config, report)


if __name__ == '__main__':
    main()
