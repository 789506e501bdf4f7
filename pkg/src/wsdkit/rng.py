"""SplitMix64, the seedable generator behind instance generation and weight sampling.

Fixed so that any reimplementation reproduces instances from a seed bit for
bit:

* state is a 64-bit unsigned integer, initialised to ``seed mod 2**64``;
* ``next_u64``: ``state += 0x9E3779B97F4A7C15``, then
  ``z = state``; ``z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9``;
  ``z = (z ^ (z >> 27)) * 0x94D049BB133111EB``; return ``z ^ (z >> 31)``
  (all arithmetic mod ``2**64``);
* ``randint(lo, hi)``: with ``r = hi - lo + 1``, draw ``x = next_u64()`` until
  ``x < 2**64 - (2**64 mod r)``, then return ``lo + x mod r``.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection, so no modulo bias."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        r = hi - lo + 1
        if r > 1 << 64:
            raise ValueError("range wider than 2**64")
        limit = (1 << 64) - ((1 << 64) % r)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % r
