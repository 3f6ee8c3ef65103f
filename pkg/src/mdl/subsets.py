"""k-subsets of [n] as bitmasks, with colexicographic combinadic ranking.

Bit ``i`` of a mask stands for the element ``i + 1`` of [n] = {1, ..., n}.
Numeric order of masks with equal popcount coincides with colex order, so
Gosper's hack enumerates k-subsets in rank order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def k_masks(n: int, k: int) -> Iterator[int]:
    """All n-bit masks with exactly k bits set, in colex (= numeric) order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        # Gosper's hack
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def colex_rank(mask: int) -> int:
    rank = 0
    for i, pos in enumerate(iter_bits(mask)):
        rank += comb(pos, i + 1)
    return rank


def colex_unrank(rank: int, k: int) -> int:
    if rank < 0:
        raise ValueError("rank must be non-negative")
    mask = 0
    for i in range(k, 0, -1):
        # largest c with comb(c, i) <= rank
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        mask |= 1 << c
        rank -= comb(c, i)
    return mask


@dataclass(frozen=True, order=True)
class KSubset:
    """A k-element subset of {1..n}, stored as an n-bit mask."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"mask {self.bits:#x} does not fit in {self.n} bits")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> KSubset:
        """Build from 1-indexed elements."""
        bits = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} outside [1, {n}]")
            if bits >> (e - 1) & 1:
                raise ValueError(f"duplicate element {e}")
            bits |= 1 << (e - 1)
        return cls(n, bits)

    @classmethod
    def unrank(cls, n: int, k: int, rank: int) -> KSubset:
        if rank >= comb(n, k):
            raise ValueError(f"rank {rank} out of range for C({n},{k})")
        return cls(n, colex_unrank(rank, k))

    @property
    def k(self) -> int:
        return self.bits.bit_count()

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in iter_bits(self.bits))

    def rank(self) -> int:
        return colex_rank(self.bits)

    def complement(self) -> KSubset:
        return KSubset(self.n, ((1 << self.n) - 1) & ~self.bits)

    def intersection_size(self, other: KSubset) -> int:
        return (self.bits & other.bits).bit_count()

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __repr__(self) -> str:
        return f"KSubset({self.n}, {self})"


def parse_subset(text: str, n: int) -> KSubset:
    """Parse ``{a,b,c}`` notation (1-indexed)."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"expected '{{a,b,...}}', got {text!r}")
    inner = body[1:-1].strip()
    items = [int(tok) for tok in inner.split(",")] if inner else []
    return KSubset.of(n, items)
