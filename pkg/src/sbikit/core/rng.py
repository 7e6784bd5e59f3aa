"""Deterministic, splittable randomness.

Keys are immutable 128-bit values. Child keys are derived with ``fold_in``,
a pure mixing function, so any computation seeded by a key is reproducible
bit-for-bit regardless of evaluation order. Actual variates are produced by
a counter-based Philox generator keyed on the 128-bit state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_MASK128 = (1 << 128) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    """splitmix64 finalizer: a fixed, well-distributed 64-bit hash."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngKey:
    """Immutable 128-bit random seed. All stochastic operations consume one."""

    state: int

    def __post_init__(self):
        object.__setattr__(self, "state", self.state & _MASK128)

    def generator(self) -> np.random.Generator:
        """Fresh counter-based generator for this key (same key, same stream)."""
        return np.random.Generator(np.random.Philox(key=self.state))


def seed(value: int) -> RngKey:
    """Expand an arbitrary integer into a well-mixed 128-bit key."""
    lo = _mix64(value & _MASK64)
    hi = _mix64((value & _MASK64) ^ _GOLDEN ^ _mix64(value >> 64))
    return RngKey((hi << 64) | lo)


def fold_in(key: RngKey, index: int) -> RngKey:
    """Derive a child key from ``key`` and an integer ``index``.

    Pure and deterministic: the child state is a fixed 128-bit hash of
    ``state XOR index``, built from two chained splitmix64 passes per
    64-bit half so that both halves depend on all input bits.
    """
    base = (key.state ^ (index & _MASK128)) & _MASK128
    lo, hi = base & _MASK64, base >> 64
    h1 = _mix64(lo ^ _mix64(hi))
    h2 = _mix64(hi ^ h1)
    return RngKey(((h2 & _MASK64) << 64) | (_mix64(h1 ^ h2) & _MASK64))


def split(key: RngKey, n: int) -> list[RngKey]:
    """``n`` distinct child keys (fold_in over 0..n-1)."""
    return [fold_in(key, i) for i in range(n)]
