"""Bitmask helpers shared by the combinatorial modules."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Positions of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(items: Iterable[int], position: dict[int, int]) -> int:
    m = 0
    for x in items:
        m |= 1 << position[x]
    return m


def from_mask(mask: int, ground: Sequence[int]) -> tuple[int, ...]:
    return tuple(ground[i] for i in bits(mask))


def block_key(block: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by size, then lexicographic."""
    return (len(block), tuple(block))


def connected_mask(mask: int, adjacency: Sequence[int]) -> bool:
    """Whether the vertices of ``mask`` induce a connected subgraph."""
    if not mask:
        return False
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for i in bits(frontier):
            nxt |= adjacency[i]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask
