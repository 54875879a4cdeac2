"""Counter-based random streams.

Every random draw in the package comes from a stream addressed by
``(seed, tag, index, subindex)``. The Philox key holds the seed and a
purpose tag, the counter holds the sample index, so a sample's randomness
never depends on which worker produced it or in what order.
"""

import numpy as np

_MASK = (1 << 64) - 1

# purpose tags
PRIOR = 1
STATE = 2
CHANNEL = 3
DIAMOND = 4
SANDWICH = 5
SEARCH = 6


def stream(seed, index=0, subindex=0, tag=0):
    """Return a ``numpy.random.Generator`` for one addressed stream."""
    bitgen = np.random.Philox(
        key=[int(seed) & _MASK, int(tag) & _MASK],
        counter=[0, 0, int(index) & _MASK, int(subindex) & _MASK],
    )
    return np.random.Generator(bitgen)
