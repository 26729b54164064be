"""Deterministic pseudo-randomness for puzzle generation.

Everything seeded in this package runs on splitmix64 (Steele, Lea &
Flood's SplitMix generator), chosen because it is tiny, has fixed
published constants, and is trivial to reimplement bit-for-bit in any
language.  The stream for a 64-bit seed ``s`` is::

    state_0 = s
    state_n = (state_{n-1} + 0x9E3779B97F4A7C15) mod 2^64
    out_n   = mix64(state_n)

where ``mix64`` is the splitmix64 finalizer below.  Bounded draws use
plain modulo (``out_n % n``); shuffles are Fisher-Yates from the top
index down.  Any implementation following these rules reproduces the
same puzzles for the same seeds.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(base: int, n: int) -> int:
    """Seed for the n-th derived stream of ``base`` (session game seeds)."""
    return mix64((base + n * GOLDEN_GAMMA) & MASK64)


class SplitMix64:
    """Stateful splitmix64 stream over a 64-bit seed."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n); modulo reduction by design (documented)."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, swapping from the top index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
