"""Coalitions of features encoded as bit masks.

A coalition S of {1..M} is stored as an M-bit integer where bit j-1 set
means feature j is in S (observed / conditioned on).  The canonical
enumeration is by coalition size, then by bit pattern, with the empty
coalition first and the grand coalition last.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidDimensionError

__all__ = ["Coalition", "enumerate_coalitions", "nontrivial_coalitions"]

MAX_FEATURES = 20


@dataclass(frozen=True)
class Coalition:
    bits: int
    m: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.m):
            raise InvalidDimensionError(f"bits {self.bits:#x} out of range for M={self.m}")

    @property
    def size(self) -> int:
        return int(self.bits).bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_full(self) -> bool:
        return self.bits == (1 << self.m) - 1

    def complement(self) -> "Coalition":
        return Coalition(bits=~self.bits & ((1 << self.m) - 1), m=self.m)

    def members(self) -> np.ndarray:
        """0-based indices of the features in S, ascending."""
        return np.flatnonzero(self.indicator())

    def indicator(self) -> np.ndarray:
        """Binary vector I(S) of length M (1 = feature in S)."""
        return np.array([(self.bits >> j) & 1 for j in range(self.m)], dtype=np.int64)

    def __contains__(self, feature: int) -> bool:
        """Membership of a 0-based feature index."""
        return bool((self.bits >> feature) & 1)

    def __str__(self) -> str:
        inside = ",".join(str(j + 1) for j in self.members())
        return "{" + inside + "}"


@lru_cache(maxsize=32)
def enumerate_coalitions(m: int) -> tuple[Coalition, ...]:
    """All 2^M coalitions ordered by size then bit pattern; empty first, full last."""
    if not isinstance(m, int) or not 1 <= m <= MAX_FEATURES:
        raise InvalidDimensionError(f"M must be an integer in [1, {MAX_FEATURES}], got {m!r}")
    all_bits = sorted(range(1 << m), key=lambda b: (b.bit_count(), b))
    return tuple(Coalition(bits=b, m=m) for b in all_bits)


def nontrivial_coalitions(m: int) -> tuple[Coalition, ...]:
    """The 2^M - 2 coalitions excluding the empty and grand coalitions."""
    return enumerate_coalitions(m)[1:-1]
