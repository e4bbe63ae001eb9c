"""SplitMix64 pseudorandom generator.

All generators draw from this so that a ``(family, params, seed)`` triple
produces the same instance in any implementation of the algorithm:

    state <- state + 0x9E3779B97F4A7C15 (mod 2^64)
    z <- state
    z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 (mod 2^64)
    z <- (z xor (z >> 27)) * 0x94D049BB133111EB (mod 2^64)
    output z xor (z >> 31)

Floats take the top 53 bits; bounded integers use rejection sampling on the
top bits so that they are exactly uniform.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound: int) -> int:
        """Uniform integer in ``0..bound-1``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        width = (bound - 1).bit_length()
        while True:
            x = self.next_u64() >> (64 - width)
            if x < bound:
                return x

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``lo..hi`` inclusive."""
        return lo + self.below(hi - lo + 1)

    def chance(self, p: float) -> bool:
        return self.random() < p

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, items, count: int) -> list:
        pool = list(items)
        self.shuffle(pool)
        return pool[:count]

    def fork(self) -> SplitMix64:
        return SplitMix64(self.next_u64())
