"""Seeded random streams.

Every stochastic routine in the package draws from numpy's PCG64 generator
seeded through a :class:`numpy.random.SeedSequence`. A stream is identified
by a non-negative 64-bit ``seed`` and an optional key (for example a setting
or point index), so that item ``k`` of a batch gets the same numbers no matter
how many items are drawn or in which order.
"""

import numpy as np

from .errors import SpecError

MAX_SEED = 2**64 - 1


def check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise SpecError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) <= MAX_SEED:
        raise SpecError(f"seed must lie in [0, 2**64 - 1], got {seed}")
    return int(seed)


def generator(seed, *key):
    """PCG64 generator for ``seed``, optionally keyed by non-negative integers."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))
