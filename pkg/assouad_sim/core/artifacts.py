"""
Files written and read by the experiments.

Path CSV: header ``t,x1[,x2,...]``, one row per grid point, 17 significant
digits, LF line endings, plus a JSON sidecar ``<name>.json`` with
{family, parameters, n_steps, delta, seed}. Every file is written to a
temporary name first and renamed into place.
"""

import contextlib
import io
import json
import logging
import os
import tempfile

import numpy as np

from assouad_sim.core.errors import ArtifactError, InvalidArgument
from assouad_sim.core.graph_geometry import Window
from assouad_sim.core.process_sim import ProcessSpec, SamplePath

log = logging.getLogger(__name__)

PATH_FORMAT = '%.17g'


def file_mode():
    """Permissions of a newly created file under the current umask."""
    mask = os.umask(0)
    os.umask(mask)
    return 0o666 & ~mask


@contextlib.contextmanager
def atomic_write(path, mode='w'):
    """Open a temporary file next to ``path``; rename it over ``path`` on success."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix='.tmp-', dir=directory)
    except OSError as e:
        raise ArtifactError('cannot write {}: {}'.format(path, e)) from e
    try:
        kwargs = {'newline': '\n', 'encoding': 'utf-8'} if 'b' not in mode else {}
        with io.open(fd, mode, **kwargs) as stream:
            yield stream
        os.chmod(tmp, file_mode())
        os.replace(tmp, path)
    except OSError as e:
        raise ArtifactError('cannot write {}: {}'.format(path, e)) from e
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    log.debug('wrote %s', path)


def write_json(path, data):
    with atomic_write(path) as stream:
        json.dump(data, stream, indent=2, sort_keys=True)
        stream.write('\n')


def read_json(path):
    try:
        with io.open(path, encoding='utf-8') as stream:
            return json.load(stream)
    except (OSError, ValueError) as e:
        raise ArtifactError('cannot read {}: {}'.format(path, e)) from e


def sidecar_path(path):
    root, _ = os.path.splitext(os.fspath(path))
    return root + '.json'


def write_path(path, sample):
    """Write ``sample`` as CSV at ``path`` and its metadata next to it."""
    header = ','.join(['t'] + ['x{}'.format(j + 1) for j in range(sample.dim)])
    with atomic_write(path) as stream:
        np.savetxt(stream, np.column_stack([sample.times, sample.values]),
                   fmt=PATH_FORMAT, delimiter=',', header=header, comments='', newline='\n')
    write_json(sidecar_path(path), sample.metadata())


def read_path(path):
    """Inverse of :func:`write_path`; the sidecar must exist."""
    metadata = read_json(sidecar_path(path))
    try:
        data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
    except (OSError, ValueError) as e:
        raise ArtifactError('cannot read {}: {}'.format(path, e)) from e
    try:
        spec = ProcessSpec.from_parameters(metadata['family'], metadata.get('parameters'))
        return SamplePath(data[:, 0], data[:, 1:], metadata['delta'], metadata['seed'], spec)
    except (KeyError, TypeError) as e:
        raise InvalidArgument('bad path metadata in {}: {}'.format(
            sidecar_path(path), e)) from e


def write_windows(path, windows):
    write_json(path, [w.to_dict() for w in windows])


def read_windows(path):
    data = read_json(path)
    if not isinstance(data, list):
        raise InvalidArgument('{} must hold a JSON array of windows'.format(path))
    return [Window.from_dict(item) for item in data]


def write_profile(path, profile):
    """Assouad profile records as CSV (anchor_t, anchor_x, R, r, N, exponent)."""
    with atomic_write(path) as stream:
        stream.write(','.join(profile.records[0].FIELDS) + '\n')
        for record in profile.records:
            t, x, R, r, count, exponent = record.to_row()
            stream.write('{!r},{!r},{!r},{!r},{:d},{!r}\n'.format(
                float(t), float(x), float(R), float(r), count, float(exponent)))
