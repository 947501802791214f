"""
Seeding for reproducible, scheduling-independent random streams.

Every path is drawn from a counter-based Philox generator. Replica and
coordinate streams are derived from the master seed through a
``SeedSequence`` spawn key, so the stream a replica sees depends only on
``(seed, replica, coordinate)`` and never on which worker runs it.
"""

import numpy as np

from assouad_sim.core.errors import InvalidArgument

SEED_MAX = 2 ** 64


def check_seed(seed):
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, (int, np.integer)):
        raise InvalidArgument('seed must be an integer, got {!r}'.format(seed))
    seed = int(seed)
    if not 0 <= seed < SEED_MAX:
        raise InvalidArgument('seed must be a 64-bit unsigned integer, got {}'.format(seed))
    return seed


def make_generator(seed):
    return np.random.Generator(np.random.Philox(check_seed(seed)))


def derive_seed(seed, replica=0, coordinate=0):
    """64-bit seed of stream ``(replica, coordinate)`` under master ``seed``."""
    if replica < 0 or coordinate < 0:
        raise InvalidArgument('replica and coordinate indices must be >= 0')
    sequence = np.random.SeedSequence(
        entropy=check_seed(seed), spawn_key=(int(replica), int(coordinate)))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def replica_seeds(seed, replicas):
    return [derive_seed(seed, replica=i) for i in range(replicas)]
