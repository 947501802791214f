"""Logging and error wrapping decorators shared by the estimators and CLI."""

import logging
from functools import partial, wraps

from assouad_sim.core.errors import AssouadSimError


def debug_it(func):
    log = logging.getLogger(func.__module__)

    @wraps(func)
    def wrapper(*args, **kwargs):
        log.debug("Entering {} with args={}, kwargs={}".format(
            func.__name__, _short(args), _short(kwargs)))
        output = func(*args, **kwargs)
        log.debug("Leaving {} without error with output {}".format(
            func.__name__, _short(output)))
        return output
    return wrapper


def handle_error(func=None, msg="assouad-sim error", error=AssouadSimError):
    """Re-raise anything but our own errors as `error`, chained."""
    if func is None:
        return partial(handle_error, msg=msg, error=error)

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except AssouadSimError:
            raise
        except Exception as e:
            raise error("{}: {}".format(msg, e)) from e
    return wrapper


def _short(obj, limit=200):
    text = repr(obj)
    if len(text) > limit:
        text = text[:limit] + '...'
    return text
