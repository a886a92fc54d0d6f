"""Counter-based random streams and inverse-CDF variates.

Streams are Philox keyed by the user seed with the 128-bit counter's high
word set per block of sample indices, so any partitioning of indices across
workers reproduces the same output ordering.
"""

from __future__ import annotations

import numpy as np

from . import backend

BLOCK = 4096


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """Independent substream for one block of sample indices."""
    return np.random.Generator(np.random.Philox(key=seed, counter=block_index << 64))


def normal_from_uniform(u: np.ndarray) -> np.ndarray:
    """Inverse standard normal CDF, elementwise (deterministic, no
    rejection)."""
    flat = np.asarray(u, dtype=float).ravel()
    out = np.fromiter((backend.normal_inv_cdf(v) for v in flat),
                      dtype=float, count=flat.size)
    return out.reshape(np.shape(u))


def exponential_from_uniform(u: np.ndarray) -> np.ndarray:
    """Unit exponential by inversion; u in [0, 1)."""
    return -np.log1p(-np.asarray(u, dtype=float))


def uniform_blocks(seed: int, count: int, per_sample: int) -> np.ndarray:
    """(count, per_sample) uniforms, reproducible independent of how blocks
    would be scheduled across workers."""
    out = np.empty((count, per_sample), dtype=float)
    for b in range((count + BLOCK - 1) // BLOCK):
        lo = b * BLOCK
        hi = min(lo + BLOCK, count)
        gen = block_generator(seed, b)
        out[lo:hi] = gen.random((hi - lo, per_sample))
    return out
