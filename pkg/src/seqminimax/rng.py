"""Counter-based deterministic random streams.

Every random quantity in the package is drawn from a Philox generator keyed
by ``(seed, stream)``.  Distinct streams are statistically independent and
each stream's output is a pure function of the key, so replicate r of a
Monte-Carlo experiment can use ``stream=r`` and the result does not depend
on evaluation order or parallel scheduling.
"""

import numpy as np

_MASK64 = (1 << 64) - 1


def generator(seed, stream=0):
    """Return a fresh ``numpy.random.Generator`` for the given (seed, stream) key."""
    key = np.array([int(seed) & _MASK64, int(stream) & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def standard_normals(seed, stream, n):
    """n standard Gaussian deviates; deviate j is a pure function of (seed, stream, j)."""
    return generator(seed, stream).standard_normal(int(n))
