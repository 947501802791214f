#!/usr/bin/env python

"""Fixtures for the tests."""

import pytest

from assouad_sim.core.graph_geometry import build_graph
from assouad_sim.core.process_sim import gen_wiener

__docformat__ = 'restructuredtext'


def pytest_configure(config):
    config.addinivalue_line(
        'markers', 'slow: full-resolution runs on 2**20-step paths')


@pytest.fixture
def wiener_path():
    return gen_wiener(2 ** 10, seed=7)


@pytest.fixture
def wiener_graph(wiener_path):
    return build_graph(wiener_path)
