"""Deterministic 64-bit random number generation.

All procedural generation draws from SplitMix64 sequences so that the same
seed yields bit-identical layouts on every platform and Python version.
Each generation phase (partition, room sizing, corridor placement, window
placement, ...) gets its own stream derived from the master seed and the
phase name; adding a new phase therefore never perturbs draws made by
existing phases.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def _fnv1a(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & MASK64
    return h


class SplitMix64:
    """SplitMix64 sequence (Steele, Lea & Flood's mixer, 64-bit)."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        return _mix(self._state)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n). n must be positive."""
        if n <= 0:
            raise ValueError(f"below() needs n > 0, got {n}")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        return lo + self.below(hi - lo + 1)

    def chance(self) -> bool:
        return self.next_u64() & 1 == 1


def stream(seed: int, phase: str) -> SplitMix64:
    """Derive the independent SplitMix64 stream for one generation phase."""
    return SplitMix64(_mix((seed ^ _fnv1a(phase)) & MASK64))
