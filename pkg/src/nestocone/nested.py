"""Nested sets, flips, exchange frames and exchangeability."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from ._bits import bits, block_key, popcount
from .building import Block, BuildingSet
from .errors import InputError, InvariantError


@dataclass(frozen=True)
class NestedSet:
    building: BuildingSet = field(compare=False, hash=False, repr=False)
    blocks: tuple[Block, ...]

    @classmethod
    def of(cls, b: BuildingSet, blocks: Iterable[Iterable[int]]) -> "NestedSet":
        masks = {b.block_mask(blk) for blk in blocks}
        return cls._from_masks(b, masks)

    @classmethod
    def _from_masks(cls, b: BuildingSet, masks: Iterable[int]) -> "NestedSet":
        ordered = sorted((b.unmask(m) for m in masks), key=block_key)
        return cls(b, tuple(ordered))

    def masks(self) -> frozenset[int]:
        return frozenset(self.building.mask(blk) for blk in self.blocks)

    def __contains__(self, block) -> bool:
        return tuple(sorted(block)) in self.blocks

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def is_maximal(self) -> bool:
        return len(self.blocks) == self.building.n

    def to_json(self) -> dict:
        return {"blocks": [list(blk) for blk in self.blocks]}


@dataclass(frozen=True)
class ExchangeFrame:
    """Exchanged blocks, their parent, and the pivots (v in b_out, v' in b_in)."""

    b_out: Block
    b_in: Block
    parent: Block
    pivots: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "b_out": list(self.b_out),
            "b_in": list(self.b_in),
            "parent": list(self.parent),
            "pivots": list(self.pivots),
        }


# -- nestedness -----------------------------------------------------------


def _is_nested_masks(b: BuildingSet, masks: Sequence[int]) -> bool:
    masks = list(dict.fromkeys(masks))
    for x, y in combinations(masks, 2):
        inter = x & y
        if inter and inter != x and inter != y:
            return False
    # unions of >= 2 pairwise disjoint members must not be blocks
    def grow(start: int, union: int, size: int) -> bool:
        for k in range(start, len(masks)):
            m = masks[k]
            if m & union:
                continue
            u = union | m
            if size >= 1 and b.is_block_mask(u):
                return False
            if not grow(k + 1, u, size + 1):
                return False
        return True

    return grow(0, 0, 0)


def is_nested_set(b: BuildingSet, s: Iterable[Iterable[int]]) -> bool:
    """Pairwise nested-or-disjoint, no disjoint union of >= 2 members is a
    block, and all connected components present."""
    masks = [b.block_mask(blk) for blk in s]
    if not set(b.component_masks) <= set(masks):
        return False
    return _is_nested_masks(b, masks)


def _maximal_nested_masks(b: BuildingSet) -> list[tuple[int, ...]]:
    memo: dict[int, list[tuple[int, ...]]] = {}

    def on(u: int) -> list[tuple[int, ...]]:
        # maximal nested sets of the restriction to u
        if u in memo:
            return memo[u]
        per_component = []
        for comp in b.kappa(u):
            options = []
            for r in bits(comp):
                rest = comp & ~(1 << r)
                for sub in (on(rest) if rest else [()]):
                    options.append((comp,) + sub)
            per_component.append(options)
        result = [sum(choice, ()) for choice in product(*per_component)]
        memo[u] = result
        return result

    return on(b.full_mask)


def enumerate_maximal_nested_sets(b: BuildingSet) -> list[NestedSet]:
    """All maximal nested sets, in canonical order.

    Uses the root decomposition: a maximal nested set picks a root r in every
    connected component K and continues on the components of K - {r}.
    """
    result = [NestedSet._from_masks(b, masks) for masks in _maximal_nested_masks(b)]
    result.sort(key=lambda s: [block_key(blk) for blk in s.blocks])
    return result


# -- roots, parents, flips ------------------------------------------------


def _root_mask(masks: Iterable[int], m: int) -> int:
    below = 0
    for c in masks:
        if c != m and c & ~m == 0:
            below |= c
    return m & ~below


def roots(b: BuildingSet, s: NestedSet) -> dict[Block, tuple[int, ...]]:
    masks = s.masks()
    return {b.unmask(m): b.unmask(_root_mask(masks, m)) for m in sorted(masks, key=b._sort_key)}


def _parent_mask(masks: Iterable[int], m: int) -> int:
    above = [c for c in masks if c != m and m & ~c == 0]
    if not above:
        raise InputError(f"no block strictly contains {m:b}")
    return min(above, key=popcount)


def parent_of(b: BuildingSet, s: NestedSet, block: Iterable[int]) -> Block:
    """The minimal block of ``s`` strictly containing ``block``."""
    return b.unmask(_parent_mask(s.masks(), b.block_mask(block)))


def _single(b: BuildingSet, m: int) -> int:
    if popcount(m) != 1:
        raise InvariantError("root of a maximal nested set is not a singleton")
    return b.ground[m.bit_length() - 1]


def _flip_masks(b: BuildingSet, masks: frozenset[int], out: int):
    p = _parent_mask(masks, out)
    v_bit = _root_mask(masks, out)
    w_bit = _root_mask(masks, p)
    if popcount(v_bit) != 1 or popcount(w_bit) != 1:
        raise InvariantError("roots of a maximal nested set must be singletons")
    entering = next(k for k in b.kappa(p & ~v_bit) if k & w_bit)
    new = (masks - {out}) | {entering}
    return p, entering, new, _single(b, v_bit), _single(b, w_bit)


def flip(b: BuildingSet, s: NestedSet, block: Iterable[int]) -> tuple[ExchangeFrame, NestedSet]:
    """Replace ``block`` in the maximal nested set ``s`` by the unique other choice."""
    if not s.is_maximal() or not _is_nested_masks(b, list(s.masks())):
        raise InputError("flips are defined on maximal nested sets only")
    out = b.block_mask(block)
    masks = s.masks()
    if out not in masks:
        raise InputError(f"{list(block)} is not in the nested set")
    if out in b.component_masks:
        raise InputError("connected components cannot be flipped")
    p, entering, new, v, w = _flip_masks(b, masks, out)
    frame = ExchangeFrame(b.unmask(out), b.unmask(entering), b.unmask(p), (v, w))
    return frame, NestedSet._from_masks(b, new)


def flips(b: BuildingSet, s: NestedSet) -> list[tuple[ExchangeFrame, NestedSet]]:
    """One flip per non-component block of the maximal nested set ``s``."""
    if not s.is_maximal() or not _is_nested_masks(b, list(s.masks())):
        raise InputError("flips are defined on maximal nested sets only")
    comps = set(b.component_masks)
    return [flip(b, s, blk) for blk in s.blocks if b.mask(blk) not in comps]


# -- exchangeability ------------------------------------------------------


def _witness_ok(b: BuildingSet, x: int, y: int, p: int, v: int, w: int, tests: Iterable[int]) -> bool:
    for c in tests:
        if c & ~p:
            continue
        if c & x and c & ~x and not c & w:
            return False
        if c & y and c & ~y and not c & v:
            return False
    return True


def exchange_witnesses(
    b: BuildingSet, x: Iterable[int], y: Iterable[int], only_elementary: bool = True
) -> list[tuple[Block, int, int]]:
    """All (P, v, v') certifying that ``x`` and ``y`` are exchangeable.

    For every block C inside P meeting x without lying in x, v' must be in C,
    and symmetrically v must be in every such C for y. Testing elementary C
    is enough; ``only_elementary=False`` tests every block.
    """
    xm, ym = b.block_mask(x), b.block_mask(y)
    if xm == ym:
        raise InputError("exchangeability needs two distinct blocks")
    tests = sorted(b.elementary_masks) if only_elementary else b.block_masks()
    out = []
    for p in b.block_masks():
        if p in (xm, ym) or (xm | ym) & ~p:
            continue
        for vb in bits(xm & ~ym):
            for wb in bits(ym & ~xm):
                if _witness_ok(b, xm, ym, p, 1 << vb, 1 << wb, tests):
                    out.append((b.unmask(p), b.ground[vb], b.ground[wb]))
    return out


def is_valid_frame(b: BuildingSet, frame: ExchangeFrame) -> bool:
    try:
        xm, ym, p = b.block_mask(frame.b_out), b.block_mask(frame.b_in), b.block_mask(frame.parent)
        v, w = b.mask([frame.pivots[0]]), b.mask([frame.pivots[1]])
    except InputError:
        return False
    if xm == ym or p in (xm, ym) or (xm | ym) & ~p:
        return False
    if not (v & xm and not v & ym and w & ym and not w & xm):
        return False
    return _witness_ok(b, xm, ym, p, v, w, b.block_masks())


def maximal_exchange_frames(b: BuildingSet) -> list[ExchangeFrame]:
    """Frames (B, B', P) for distinct maximal strict subblocks B, B' of each P.

    Pivots are the lexicographically smallest pair passing the exchangeability
    test with parent P; if none passes, the smallest elements of B - B' and
    B' - B are recorded (the normal does not depend on the pivots).
    """
    tests = sorted(b.elementary_masks)
    frames = []
    for p in b.block_masks():
        if popcount(p) < 2:
            continue
        for x, y in combinations(b.mu(p), 2):
            pivots = None
            for vb in bits(x & ~y):
                for wb in bits(y & ~x):
                    if _witness_ok(b, x, y, p, 1 << vb, 1 << wb, tests):
                        pivots = (b.ground[vb], b.ground[wb])
                        break
                if pivots:
                    break
            if pivots is None:
                vb = (x & ~y & -(x & ~y)).bit_length() - 1
                wb = (y & ~x & -(y & ~x)).bit_length() - 1
                pivots = (b.ground[vb], b.ground[wb])
            frames.append(ExchangeFrame(b.unmask(x), b.unmask(y), b.unmask(p), pivots))
    return frames


def nested_set_from_json(b: BuildingSet, data: dict) -> NestedSet:
    if not isinstance(data, dict) or "blocks" not in data:
        raise InputError("nested-set JSON needs a 'blocks' field")
    s = NestedSet.of(b, data["blocks"])
    if not is_nested_set(b, s.blocks):
        raise InputError("the given blocks do not form a nested set")
    return s
