"""Counter-based deterministic randomness.

Every random decision in this package comes from hashing a
(master_seed, stream_id, counter) triple through the SplitMix64 output
function.  There is no sequential generator state: the draw at a given
counter is a pure function of the triple, so results are bit-identical
across platforms, processes, and call orderings, and distinct concerns
(edge sampling, Morse matchings, certificate search) can consume from
independent substreams without interfering.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB
_HASH_SALT = 0x243F6A8885A308D3


def mix64(z: int) -> int:
    """SplitMix64 output function on a 64-bit integer (scalar path)."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MULT1) & _MASK64
    z = ((z ^ (z >> 27)) * _MULT2) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix64_array(z: np.ndarray) -> np.ndarray:
    """SplitMix64 output function applied elementwise to a uint64 array."""
    z = z.astype(np.uint64, copy=True)
    z += np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MULT1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MULT2)
    return z ^ (z >> np.uint64(31))


def hash64(*parts: int) -> int:
    """Stable order-sensitive 64-bit hash of a tuple of integers."""
    h = _HASH_SALT
    for v in parts:
        h = mix64(h ^ (v & _MASK64))
    return h


def float_bits(x: float) -> int:
    """IEEE-754 bit pattern of a double, as an unsigned 64-bit integer."""
    return struct.unpack("<Q", struct.pack("<d", float(x)))[0]


def _to_uniform(word: int) -> float:
    # 53 high bits -> [0, 1)
    return (word >> 11) * (2.0 ** -53)


@dataclass(frozen=True)
class RandomSource:
    """A keyed stream of 64-bit words indexed by counter.

    ``raw_at(c)`` = mix64(base ^ mix64(c)) where base folds the master
    seed and stream id together.  ``substream(tag)`` derives a new
    stream id, giving a tree of independent streams under one seed.
    """

    master_seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "master_seed", self.master_seed & _MASK64)
        object.__setattr__(self, "stream_id", self.stream_id & _MASK64)

    @property
    def _base(self) -> int:
        return mix64(self.master_seed ^ mix64(self.stream_id))

    def substream(self, tag: int) -> "RandomSource":
        return RandomSource(self.master_seed, mix64(self.stream_id ^ mix64(tag)))

    # -- scalar draws ----------------------------------------------------

    def raw_at(self, counter: int) -> int:
        return mix64(self._base ^ mix64(counter))

    def uniform_at(self, counter: int) -> float:
        return _to_uniform(self.raw_at(counter))

    # -- vector draws ----------------------------------------------------

    def raw_for(self, counters: np.ndarray) -> np.ndarray:
        """Words for an arbitrary uint64 counter array (vector path)."""
        base = np.uint64(self._base)
        return mix64_array(base ^ mix64_array(np.asarray(counters, dtype=np.uint64)))

    def raw_block(self, start: int, count: int) -> np.ndarray:
        return self.raw_for(np.arange(start, start + count, dtype=np.uint64))

    def uniform_block(self, start: int, count: int) -> np.ndarray:
        words = self.raw_block(start, count)
        return (words >> np.uint64(11)).astype(np.float64) * (2.0 ** -53)

    def cursor(self) -> "DrawCursor":
        return DrawCursor(self)


class DrawCursor:
    """Sequential consumption of a stream, for code that wants a plain RNG."""

    __slots__ = ("_src", "_counter")

    def __init__(self, src: RandomSource, start: int = 0):
        self._src = src
        self._counter = start

    def next_raw(self) -> int:
        v = self._src.raw_at(self._counter)
        self._counter += 1
        return v

    def uniform(self) -> float:
        return _to_uniform(self.next_raw())

    def randint(self, bound: int) -> int:
        """Uniform integer in [0, bound).  Modulo bias is below 2**-50
        for the bounds used here (bound <= a few thousand)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_raw() % bound

    def choice(self, seq):
        if len(seq) == 0:
            raise ValueError("empty sequence")
        return seq[self.randint(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(i + 1)
            items[i], items[j] = items[j], items[i]
