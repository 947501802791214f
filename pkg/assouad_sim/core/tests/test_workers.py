#!/usr/bin/env python

"""Tests for the replica pool."""

import logging
import threading

import pytest

from assouad_sim.core.errors import AssouadSimError, InvalidArgument, WorkerError
from assouad_sim.core.workers import ProgressCounter, ReplicaPool

__docformat__ = 'restructuredtext'


@pytest.mark.parametrize('workers', [1, 3, 8])
def test_results_come_back_in_item_order(workers):
    assert ReplicaPool(workers).map(lambda i: i * i, range(50)) == [i * i for i in range(50)]


def test_single_worker_runs_in_the_calling_thread():
    names = ReplicaPool(1).map(lambda _: threading.current_thread().name, range(3))
    assert set(names) == {threading.current_thread().name}


def test_lowest_failing_item_is_reported():
    def func(i):
        if i in (7, 3, 12):
            raise ValueError('bad item {}'.format(i))
        return i

    with pytest.raises(WorkerError) as info:
        ReplicaPool(4, name='test').map(func, range(20))
    assert str(info.value) == 'Error in worker thread: item #3 of test: bad item 3'
    assert isinstance(info.value.__cause__, ValueError)
    assert isinstance(info.value, AssouadSimError)


def test_pool_needs_a_worker():
    with pytest.raises(InvalidArgument):
        ReplicaPool(0)
    with pytest.raises(InvalidArgument):
        ReplicaPool(2, progress_every=0)


@pytest.mark.parametrize('workers', [1, 4])
def test_progress_is_logged(caplog, workers):
    caplog.set_level(logging.INFO, logger='assouad_sim')
    ReplicaPool(workers, name='test', progress_every=10).map(lambda i: i, range(35))
    messages = sorted(r.getMessage() for r in caplog.records if 'items done' in r.getMessage())
    assert messages == ['10/35 items done', '20/35 items done', '30/35 items done']


def test_progress_counter_keeps_the_first_error():
    counter = ProgressCounter()
    counter.finished()
    counter.failed(5, KeyError('a'))
    counter.failed(2, KeyError('b'))
    counter.failed(9, KeyError('c'))
    assert counter.done == 1
    assert counter.first_error[0] == 2
