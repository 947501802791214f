"""Ordered, thread based execution of Monte-Carlo replicas."""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor

from assouad_sim.core.errors import InvalidArgument, WorkerError

PROGRESS_EVERY = 1000


class ProgressCounter(object):
    """
    Counts finished items and remembers the first failure. It is thread
    safe.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._done = 0
        self._first_error = None

    @property
    def done(self):
        with self._lock:
            return self._done

    @property
    def first_error(self):
        with self._lock:
            return self._first_error

    def finished(self):
        """Count one finished item; returns the new total."""
        with self._lock:
            self._done += 1
            return self._done

    def failed(self, index, exc):
        with self._lock:
            if self._first_error is None or index < self._first_error[0]:
                self._first_error = (index, exc)


class ReplicaPool(object):
    """
    Run ``func(item)`` for each item and return the results in item order.

    With one worker everything runs in the calling thread. Results never
    depend on the number of workers: each item carries its own seed and the
    merge is by index.
    """

    def __init__(self, workers=1, name='replicas', progress_every=PROGRESS_EVERY):
        if workers < 1:
            raise InvalidArgument('workers must be >= 1, got {}'.format(workers))
        if progress_every < 1:
            raise InvalidArgument('progress_every must be >= 1, got {}'.format(progress_every))
        self.workers = int(workers)
        self.name = name
        self.progress_every = int(progress_every)
        self.log = logging.getLogger('assouad_sim.workers.ReplicaPool({})'.format(name))

    def map(self, func, items):
        items = list(items)
        counter = ProgressCounter()
        self.log.debug('running %d items on %d worker(s)', len(items), self.workers)
        total = len(items)
        if self.workers == 1 or total <= 1:
            results = [self._run_one(func, index, item, counter, total)
                       for index, item in enumerate(items)]
        else:
            with ThreadPoolExecutor(max_workers=self.workers,
                                    thread_name_prefix=self.name) as executor:
                futures = [executor.submit(self._run_one, func, index, item, counter, total)
                           for index, item in enumerate(items)]
                results = [future.result() for future in futures]
        self._abort_if_any_worker_errors(counter)
        self.log.debug('%d of %d items done', counter.done, total)
        return results

    def _run_one(self, func, index, item, counter, total):
        try:
            result = func(item)
        except Exception as exc:
            counter.failed(index, exc)
            return None
        done = counter.finished()
        if done % self.progress_every == 0:
            self.log.info('%d/%d items done', done, total)
        return result

    def _abort_if_any_worker_errors(self, counter):
        error = counter.first_error
        if error is not None:
            index, exc = error
            raise WorkerError(
                "Error in worker thread: item #{} of {}: {}".format(
                    index, self.name, exc)
            ) from exc
