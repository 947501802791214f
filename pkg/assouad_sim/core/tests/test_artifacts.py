#!/usr/bin/env python

"""Tests for the files written by the experiments."""

import os
import stat

import numpy as np
import pytest

from assouad_sim.core.artifacts import (
    atomic_write, read_json, read_path, read_windows, sidecar_path, write_json, write_path,
    write_profile, write_windows)
from assouad_sim.core.dimension_estimators import assouad_profile
from assouad_sim.core.errors import ArtifactError, InvalidArgument
from assouad_sim.core.graph_geometry import Window, line_graph
from assouad_sim.core.process_sim import gen_bm_d, gen_stable

__docformat__ = 'restructuredtext'


def test_path_file_layout(tmp_path, wiener_path):
    target = tmp_path / 'path.csv'
    write_path(target, wiener_path)
    lines = target.read_text().split('\n')
    assert lines[0] == 't,x1'
    assert lines[1] == '0,0'
    assert len(lines) == wiener_path.n_steps + 3
    assert read_json(sidecar_path(target)) == {
        'family': 'wiener', 'parameters': {}, 'n_steps': 1024, 'delta': 2.0 ** -10, 'seed': 7}


def test_path_files_are_read_back_exactly(tmp_path):
    for sample in (gen_bm_d(64, 3, seed=2), gen_stable(64, 1.2, seed=2)):
        target = tmp_path / 'path.csv'
        write_path(target, sample)
        loaded = read_path(target)
        np.testing.assert_array_equal(loaded.values, sample.values)
        assert loaded.spec == sample.spec
        assert loaded.seed == sample.seed


def test_missing_sidecar(tmp_path, wiener_path):
    target = tmp_path / 'path.csv'
    write_path(target, wiener_path)
    (tmp_path / 'path.json').unlink()
    with pytest.raises(ArtifactError):
        read_path(target)


def test_failed_write_leaves_no_file(tmp_path):
    target = tmp_path / 'report.json'
    with pytest.raises(RuntimeError):
        with atomic_write(target) as stream:
            stream.write('{')
            raise RuntimeError('interrupted')
    assert list(tmp_path.iterdir()) == []


def test_written_files_follow_the_umask(tmp_path):
    previous = os.umask(0o022)
    try:
        write_json(tmp_path / 'report.json', {})
    finally:
        os.umask(previous)
    assert stat.S_IMODE(os.stat(str(tmp_path / 'report.json')).st_mode) == 0o644


def test_unwritable_directory(tmp_path):
    with pytest.raises(ArtifactError):
        write_json(tmp_path / 'missing' / 'report.json', {})


def test_windows_round_trip(tmp_path):
    windows = [Window.square((0.5, -0.25), 0.25, 4), Window((0.0, 0.0), (1.0, 2.0), (3, 5))]
    write_windows(tmp_path / 'windows.json', windows)
    assert read_windows(tmp_path / 'windows.json') == windows
    write_json(tmp_path / 'bad.json', {'anchor': [0, 0]})
    with pytest.raises(InvalidArgument):
        read_windows(tmp_path / 'bad.json')


def test_profile_csv(tmp_path):
    profile = assouad_profile(line_graph(), anchor_spacing=0.5, depth=2, ratios=(16,))
    write_profile(tmp_path / 'assouad.csv', profile)
    lines = (tmp_path / 'assouad.csv').read_text().splitlines()
    assert lines[0] == 'anchor_t,anchor_x,R,r,N,exponent'
    assert len(lines) == 1 + 3 * 2
