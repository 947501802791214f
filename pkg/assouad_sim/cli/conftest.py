#!/usr/bin/env python

"""Fixtures for the command line tests."""

import json

import pytest
from click.testing import CliRunner

from assouad_sim.cli.experiments import main

__docformat__ = 'restructuredtext'


def pytest_configure(config):
    config.addinivalue_line(
        'markers', 'slow: full-resolution runs on 2**20-step paths')


@pytest.fixture
def runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # click >= 8.2 always keeps stderr apart
        return CliRunner()


@pytest.fixture
def invoke(runner, tmp_path):
    """Run ``assouad-sim <args>`` with ``--out`` in a fresh directory."""
    def _invoke(*args, out=None):
        out = str(out or tmp_path)
        return runner.invoke(main, list(args) + ['--out', out], catch_exceptions=False)
    return _invoke


@pytest.fixture
def read_report(tmp_path):
    def _read(name, directory=None):
        with open(str((directory or tmp_path) / name)) as stream:
            return json.load(stream)
    return _read
