"""Seeded random generator with a fixed, version-proof algorithm.

Python's ``random`` module only guarantees cross-version stability for
``random()``, and numpy's bit generators are an external contract. Medoid
initialisation and synthetic map generation must stay byte-reproducible
for years, so this module pins the exact algorithm: a 64-bit linear
congruential generator (Knuth's MMIX multiplier/increment) whose top 53
bits feed the uniform doubles.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_MUL = 6364136223846793005
_INC = 1442695040888963407


class Lcg64:
    """64-bit LCG: state = state * 6364136223846793005 + 1442695040888963407 (mod 2**64)."""

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be a non-negative integer")
        self._state = (seed ^ 0x9E3779B97F4A7C15) & _MASK64
        # burn a few states so small seeds decorrelate
        for _ in range(4):
            self._next64()

    def _next64(self) -> int:
        self._state = (self._state * _MUL + _INC) & _MASK64
        return self._state

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self._next64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) without modulo bias (rejection sampling)."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % n)
        while True:
            x = self._next64()
            if x < limit:
                return x % n

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), uniform, via partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} from {n}")
        pool = list(range(n))
        for i in range(k):
            j = i + self.randrange(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def gauss(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Normal deviate via the polar (Marsaglia) method; one value per call."""
        while True:
            u = 2.0 * self.random() - 1.0
            v = 2.0 * self.random() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                return mu + sigma * u * math.sqrt(-2.0 * math.log(s) / s)
