"""Counter-based pseudorandom numbers (SplitMix64).

Every random quantity in this package is a pure function of a 64-bit
master seed plus integer stream/draw indices, so results are bit-identical
across runs, platforms, and parallel execution orders.  The generator is
the SplitMix64 finalizer (Steele, Lea & Flood 2014) applied to a Weyl
sequence with increment 0x9E3779B97F4A7C15; uniforms are built from the
top 53 bits.  No platform-default RNG is ever consulted.
"""

from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MASK = (1 << 64) - 1


def mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 output function on uint64 arrays (wraps mod 2**64)."""
    z = np.atleast_1d(np.asarray(z, dtype=np.uint64))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def master_key(seed: int) -> np.uint64:
    """Fold an arbitrary Python int seed into a 64-bit key."""
    return mix64(np.array(seed & _MASK, dtype=np.uint64))[0]


def stream_key(seed: int, stream: int) -> np.uint64:
    """Key for an independent substream (e.g. one trial, one trajectory step)."""
    base = np.array(master_key(seed), dtype=np.uint64)
    return mix64(base + np.array(stream & _MASK, dtype=np.uint64) * GOLDEN)[0]


def _to_unit(bits: np.ndarray) -> np.ndarray:
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def uniforms(seed: int, stream: int, n: int) -> np.ndarray:
    """n uniforms in [0, 1) for (seed, stream)."""
    key = np.array(stream_key(seed, stream), dtype=np.uint64)
    counters = key + np.arange(1, n + 1, dtype=np.uint64) * GOLDEN
    return _to_unit(mix64(counters))


def uniform_matrix(seed: int, rows: int, cols: int) -> np.ndarray:
    """(rows, cols) uniforms; row i is exactly uniforms(seed, i, cols).

    Row index doubles as the per-trial stream, so trial i run alone and
    trial i run inside a batch see identical draws.
    """
    base = np.array(master_key(seed), dtype=np.uint64)
    row_keys = mix64(base + np.arange(rows, dtype=np.uint64) * GOLDEN)
    counters = row_keys[:, None] + np.arange(1, cols + 1, dtype=np.uint64)[None, :] * GOLDEN
    return _to_unit(mix64(counters))
