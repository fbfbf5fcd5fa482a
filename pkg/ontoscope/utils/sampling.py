"""
Seeded random streams.

One run seed fans out into independent named streams, so adding draws to one
consumer (say, more Born pairs) never shifts the draws of another.
"""

import zlib

import numpy as np


def stream_rng(seed, stream=""):
    """numpy Generator for ``(seed, stream)``; the empty stream is plain ``default_rng(seed)``."""
    if not stream:
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(stream.encode("utf-8"))]))
