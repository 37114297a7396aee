"""Deterministic 64-bit random generator used by every seeded routine.

The generator is SplitMix64 (Steele, Lea, Flood 2014), chosen because it is
tiny, fully specified by three integer constants, and trivially portable, so
fixtures regenerate byte-identically on any platform or language:

    state := (state + 0x9E3779B97F4A7C15) mod 2^64
    z := state
    z := ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z := ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    return z XOR (z >> 31)

Bounded draws use unbiased rejection sampling, not modulo reduction.
"""

from __future__ import annotations

from typing import Sequence

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _scramble(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential SplitMix64 stream seeded with an arbitrary integer."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return _scramble(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), rejection-sampled to avoid modulo bias."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = _MASK - (_MASK + 1) % n
        while True:
            u = self.next_u64()
            if u <= limit:
                return u % n

    def chance(self, p: float) -> bool:
        """Bernoulli draw: True with probability p (compared at 64-bit scale)."""
        if p <= 0.0:
            self.next_u64()
            return False
        if p >= 1.0:
            self.next_u64()
            return True
        return self.next_u64() < int(p * (_MASK + 1))

    def shuffle(self, items: list) -> list:
        """In-place Fisher-Yates shuffle; returns the same list."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def sample(self, population: Sequence, k: int) -> list:
        """k distinct elements drawn without replacement, order randomized."""
        if k > len(population):
            raise ValueError("sample larger than population")
        pool = list(population)
        self.shuffle(pool)
        return pool[:k]


def derive_seed(seed: int, index: int) -> int:
    """Stable per-trial sub-seed so independent trials can run in any order."""
    return _scramble((seed + (index + 1) * _GAMMA) & _MASK)
