"""
Experiment configuration.

Every field is declared once in ``config_properties`` (description, type
and default); the dataclass, the JSON loader and the command line options
are all driven by that table. Precedence is command line, then ``--config``
file, then defaults.
"""

import json
import logging
from dataclasses import dataclass, field, fields, replace

from assouad_sim.core.artifacts import read_json
from assouad_sim.core.errors import InvalidArgument
from assouad_sim.core.process_sim import FAMILIES, FBM_METHODS, Integrand, ProcessSpec

log = logging.getLogger(__name__)

Type = 'type'
Description = 'description'
DefaultValue = 'defaultvalue'

FIXTURES = ('line', 'zigzag', 'full-window')

config_properties = {
    'command': {Description: 'Subcommand that produced the report', Type: str,
                DefaultValue: None},
    'process': {Description: 'Process family: ' + ', '.join(FAMILIES), Type: str,
                DefaultValue: 'wiener'},
    'beta': {Description: 'Stability index of stable paths, in (0, 2]', Type: float,
             DefaultValue: None},
    'hurst': {Description: 'Hurst index of fbm paths, in (0, 1)', Type: float,
              DefaultValue: None},
    'dim': {Description: 'Number of coordinates of bm_d paths', Type: int,
            DefaultValue: None},
    'coeffs': {Description: 'Integrand polynomial coefficients c0, c1, ...', Type: [float],
               DefaultValue: None},
    'fbm_method': {Description: 'fbm generator: ' + ', '.join(FBM_METHODS), Type: str,
                   DefaultValue: 'auto'},
    'steps': {Description: 'Grid steps N of simulated paths (command default if unset)',
              Type: int, DefaultValue: None},
    'seed': {Description: 'Master seed, 64-bit unsigned', Type: int, DefaultValue: 0},
    'replicas': {Description: 'Monte-Carlo replicas', Type: int, DefaultValue: 1000},
    'n': {Description: 'Subdivisions per window side', Type: int, DefaultValue: 2},
    'bins': {Description: 'Quadrature bins per row', Type: int, DefaultValue: 400},
    'j_min': {Description: 'Coarsest box-counting exponent (r = 2^-j)', Type: int,
              DefaultValue: None},
    'j_max': {Description: 'Finest box-counting exponent (r = 2^-j)', Type: int,
              DefaultValue: None},
    'ratios': {Description: 'Ratios R/r of the Assouad profile', Type: [int],
               DefaultValue: [16, 32, 64]},
    'depth': {Description: 'Outer scales R = 2^-k, k = 1..depth', Type: int,
              DefaultValue: 6},
    'anchor_spacing': {Description: 'Time between Assouad anchors', Type: float,
                       DefaultValue: 2.0 ** -10},
    'exhaustive': {Description: 'Anchor the Assouad profile at every vertex', Type: bool,
                   DefaultValue: False},
    'threshold': {Description: 'Occupancy threshold A of full-window searches', Type: float,
                  DefaultValue: 1.0},
    'levels': {Description: 'Dyadic intervals in window plans and fixtures', Type: int,
               DefaultValue: 8},
    'windows': {Description: 'JSON file with a window list', Type: str, DefaultValue: None},
    't': {Description: 'Horizon of the covariation report', Type: float, DefaultValue: 1.0},
    'input': {Description: 'Path CSV to analyse instead of simulating', Type: str,
              DefaultValue: None},
    'fixture': {Description: 'Synthetic geometry: ' + ', '.join(FIXTURES), Type: str,
                DefaultValue: None},
    'out': {Description: 'Output directory', Type: str, DefaultValue: '.'},
    'emit_plots': {Description: 'Write SVG plots next to the reports', Type: bool,
                   DefaultValue: False},
}

# runtime knobs; they never change a report and are not persisted
runtime_properties = {
    'workers': {Description: 'Worker threads for replicas, windows and anchors', Type: int,
                DefaultValue: 1},
    'debug': {Description: 'Log at DEBUG level', Type: bool, DefaultValue: False},
}


def _coerce(name, value, kind):
    if value is None:
        return None
    try:
        if isinstance(kind, list):
            if not isinstance(value, (list, tuple)):
                raise TypeError('expected a list')
            return [_coerce(name, item, kind[0]) for item in value]
        if kind is bool:
            if not isinstance(value, bool):
                raise TypeError('expected true or false')
            return value
        if kind is int and isinstance(value, float) and not value.is_integer():
            raise TypeError('expected an integer')
        if kind is not str and isinstance(value, (str, bool)):
            raise TypeError('expected a number')
        return kind(value)
    except (TypeError, ValueError) as e:
        raise InvalidArgument('bad value {!r} for {}: {}'.format(value, name, e)) from e


def _field(name, table):
    default = table[name][DefaultValue]
    if isinstance(default, list):
        return field(default_factory=lambda: list(default))
    return field(default=default)


@dataclass
class ExperimentConfig(object):
    command: str = _field('command', config_properties)
    process: str = _field('process', config_properties)
    beta: float = _field('beta', config_properties)
    hurst: float = _field('hurst', config_properties)
    dim: int = _field('dim', config_properties)
    coeffs: list = _field('coeffs', config_properties)
    fbm_method: str = _field('fbm_method', config_properties)
    steps: int = _field('steps', config_properties)
    seed: int = _field('seed', config_properties)
    replicas: int = _field('replicas', config_properties)
    n: int = _field('n', config_properties)
    bins: int = _field('bins', config_properties)
    j_min: int = _field('j_min', config_properties)
    j_max: int = _field('j_max', config_properties)
    ratios: list = _field('ratios', config_properties)
    depth: int = _field('depth', config_properties)
    anchor_spacing: float = _field('anchor_spacing', config_properties)
    exhaustive: bool = _field('exhaustive', config_properties)
    threshold: float = _field('threshold', config_properties)
    levels: int = _field('levels', config_properties)
    windows: str = _field('windows', config_properties)
    t: float = _field('t', config_properties)
    input: str = _field('input', config_properties)
    fixture: str = _field('fixture', config_properties)
    out: str = _field('out', config_properties)
    emit_plots: bool = _field('emit_plots', config_properties)
    workers: int = _field('workers', runtime_properties)
    debug: bool = _field('debug', runtime_properties)

    def __post_init__(self):
        table = dict(config_properties, **runtime_properties)
        for f in fields(self):
            setattr(self, f.name, _coerce(f.name, getattr(self, f.name), table[f.name][Type]))
        if self.fixture is not None and self.fixture not in FIXTURES:
            raise InvalidArgument('unknown fixture {!r}, expected one of {}'.format(
                self.fixture, ', '.join(FIXTURES)))
        if self.fbm_method not in FBM_METHODS:
            raise InvalidArgument('unknown fbm method {!r}'.format(self.fbm_method))
        if self.workers < 1:
            raise InvalidArgument('workers must be >= 1')

    @classmethod
    def from_dict(cls, data):
        unknown = sorted(set(data) - set(config_properties) - set(runtime_properties))
        if unknown:
            raise InvalidArgument('unknown configuration keys: {}'.format(', '.join(unknown)))
        return cls(**data)

    @classmethod
    def load(cls, path):
        data = read_json(path)
        if not isinstance(data, dict):
            raise InvalidArgument('{} must hold a JSON object'.format(path))
        log.debug('loaded configuration %s: %r', path, data)
        return cls.from_dict(data)

    def merged(self, **overrides):
        return replace(self, **overrides)

    def to_dict(self):
        """Persisted fields only."""
        return {name: getattr(self, name) for name in config_properties}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'

    def process_spec(self):
        """ProcessSpec from ``process`` and the parameters its family takes."""
        parameters = {'stable': {'beta': self.beta}, 'fbm': {'hurst': self.hurst},
                      'bm_d': {'dim': self.dim}}.get(self.process, {})
        if self.process == 'ito_integral':
            parameters = {'integrand': Integrand(tuple(self.integrand_coeffs()))}
        if any(value is None for value in parameters.values()):
            raise InvalidArgument('process {} needs --{}'.format(
                self.process, ', --'.join(parameters)))
        return ProcessSpec(self.process, **parameters)

    def integrand_coeffs(self):
        return self.coeffs if self.coeffs is not None else [1.0, 0.0, 1.0]
