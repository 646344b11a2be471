"""Building sets: validation, hypergraph closure, components, elementary blocks,
maximal strict subblocks, restriction and contraction.

Blocks are exposed as sorted tuples of ground elements. Internally each block is
also kept as a bitmask over the positions of the (sorted) ground set; all heavy
set algebra goes through the masks.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Literal, Sequence

from ._bits import bits, block_key, connected_mask, from_mask, popcount
from .errors import BuildingSetError, InputError
from .graphs import Graph, enumerate_tubes

Block = tuple[int, ...]


class BuildingSet:
    """A building set on a finite ground set of integers.

    Construct through :func:`build_from_blocks`, :func:`graphical_building` or
    :func:`induce`; the constructor itself trusts its input unless
    ``validate=True``.
    """

    def __init__(self, ground: Iterable[int], blocks: Iterable[Iterable[int]], *, validate: bool = True):
        self.ground: tuple[int, ...] = tuple(sorted(set(ground)))
        if not self.ground:
            raise InputError("building set needs a non-empty ground set")
        self._pos = {v: i for i, v in enumerate(self.ground)}
        masks = set()
        for raw in blocks:
            items = list(raw)
            if not items:
                raise InputError("blocks must be non-empty")
            m = 0
            for v in items:
                if v not in self._pos:
                    raise InputError(f"element {v} of block {sorted(items)} is outside the ground set")
                m |= 1 << self._pos[v]
            masks.add(m)
        ordered = sorted(masks, key=lambda m: block_key(from_mask(m, self.ground)))
        self._masks: tuple[int, ...] = tuple(ordered)
        self._index = {m: i for i, m in enumerate(ordered)}
        self.blocks: tuple[Block, ...] = tuple(from_mask(m, self.ground) for m in ordered)
        if validate:
            _check_axioms(self)
        self._mu_cache: dict[int, tuple[int, ...]] = {}
        self._kappa_cache: dict[int, tuple[int, ...]] = {}

    # -- basic protocol -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.ground)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def __contains__(self, block) -> bool:
        try:
            return self.mask(block) in self._index
        except InputError:
            return False

    def __eq__(self, other) -> bool:
        if not isinstance(other, BuildingSet):
            return NotImplemented
        return self.ground == other.ground and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.ground, self.blocks))

    def __repr__(self) -> str:
        return f"BuildingSet(ground={list(self.ground)}, {len(self.blocks)} blocks)"

    # -- masks ----------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            if v not in self._pos:
                raise InputError(f"element {v} is outside the ground set {list(self.ground)}")
            m |= 1 << self._pos[v]
        return m

    def unmask(self, m: int) -> Block:
        return from_mask(m, self.ground)

    def is_block_mask(self, m: int) -> bool:
        return m in self._index

    def block_masks(self) -> tuple[int, ...]:
        return self._masks

    def index_of(self, block: Iterable[int]) -> int:
        m = self.mask(block)
        try:
            return self._index[m]
        except KeyError:
            raise InputError(f"{sorted(block)} is not a block") from None

    def block_mask(self, block: Iterable[int]) -> int:
        """Mask of ``block``, raising if it is not a block."""
        m = self.mask(block)
        if m not in self._index:
            raise InputError(f"{sorted(set(block))} is not a block")
        return m

    # -- structure (mask level) -----------------------------------------

    def kappa(self, u: int) -> tuple[int, ...]:
        """Masks of the maximal blocks contained in the mask ``u``."""
        cached = self._kappa_cache.get(u)
        if cached is not None:
            return cached
        found = []
        covered = 0
        for m in reversed(self._masks):
            if m & ~u == 0 and not m & covered:
                found.append(m)
                covered |= m
                if covered == u:
                    break
        result = tuple(sorted(found, key=self._sort_key))
        self._kappa_cache[u] = result
        return result

    def mu(self, p: int) -> tuple[int, ...]:
        """Masks of the maximal blocks strictly contained in the mask ``p``."""
        cached = self._mu_cache.get(p)
        if cached is not None:
            return cached
        kept: list[int] = []
        for m in reversed(self._masks):
            if m != p and m & ~p == 0 and not any(m & ~k == 0 for k in kept):
                kept.append(m)
        result = tuple(sorted(kept, key=self._sort_key))
        self._mu_cache[p] = result
        return result

    def _sort_key(self, m: int):
        return block_key(self.unmask(m))

    @cached_property
    def component_masks(self) -> tuple[int, ...]:
        return self.kappa(self.full_mask)

    @property
    def components(self) -> list[Block]:
        return [self.unmask(m) for m in self.component_masks]

    def is_elementary_mask(self, p: int) -> bool:
        """Two disjoint maximal strict subblocks (valid for blocks of size > 1)."""
        if popcount(p) < 2:
            return False
        return any(not a & b for a, b in combinations(self.mu(p), 2))

    @cached_property
    def elementary_masks(self) -> frozenset[int]:
        return frozenset(m for m in self._masks if self.is_elementary_mask(m))

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        data: dict = {"blocks": [list(b) for b in self.blocks]}
        if self.ground == tuple(range(1, self.n + 1)):
            data = {"n": self.n, **data}
        else:
            data = {"ground": list(self.ground), **data}
        return data

    @classmethod
    def from_json(cls, data: dict) -> "BuildingSet":
        if not isinstance(data, dict):
            raise InputError("building-set JSON must be an object")
        if "ground" in data:
            ground = [int(v) for v in data["ground"]]
        elif "n" in data:
            ground = list(range(1, int(data["n"]) + 1))
        else:
            raise InputError("building-set JSON needs 'n' or 'ground'")
        if "generators" in data:
            return build_from_blocks(ground, data["generators"], close=bool(data.get("close", True)))
        if "blocks" not in data:
            raise InputError("building-set JSON needs 'blocks' or 'generators'")
        return build_from_blocks(ground, data["blocks"], close=bool(data.get("close", False)))


def _check_axioms(b: BuildingSet) -> None:
    for i in range(b.n):
        if (1 << i) not in b._index:
            raise BuildingSetError(f"singleton {{{b.ground[i]}}} is missing", pair=None)
    masks = b._masks
    for x, y in combinations(masks, 2):
        if x & y and (x | y) not in b._index:
            bx, by = b.unmask(x), b.unmask(y)
            raise BuildingSetError(
                f"blocks {list(bx)} and {list(by)} intersect but their union "
                f"{list(b.unmask(x | y))} is not a block",
                pair=(bx, by),
            )


def _ground_of(n_or_ground) -> list[int]:
    if isinstance(n_or_ground, int):
        if n_or_ground < 1:
            raise InputError(f"need n >= 1, got {n_or_ground}")
        return list(range(1, n_or_ground + 1))
    return list(n_or_ground)


def close_masks(masks: Iterable[int], n: int) -> set[int]:
    """Closure of ``masks`` plus all singletons under union of intersecting members."""
    family = {1 << i for i in range(n)} | set(masks)
    queue = list(family)
    while queue:
        m = queue.pop()
        for other in list(family):
            if other & m:
                u = other | m
                if u not in family:
                    family.add(u)
                    queue.append(u)
    return family


def build_from_blocks(n_or_ground, blocks: Iterable[Iterable[int]], close: bool = False) -> BuildingSet:
    """Validate a block family, or (``close=True``) close a hypergraph.

    ``n_or_ground`` is either ``n`` (ground set 1..n) or an explicit ground set.
    """
    ground = _ground_of(n_or_ground)
    blocks = [list(b) for b in blocks]
    for b in blocks:
        if not b:
            raise InputError("empty subset in block list")
    if not close:
        return BuildingSet(ground, blocks, validate=True)
    pos = {v: i for i, v in enumerate(sorted(set(ground)))}
    masks = []
    for b in blocks:
        m = 0
        for v in b:
            if v not in pos:
                raise InputError(f"element {v} is outside the ground set")
            m |= 1 << pos[v]
        masks.append(m)
    family = close_masks(masks, len(pos))
    gs = sorted(pos)
    result = BuildingSet(gs, [from_mask(m, gs) for m in family], validate=False)
    _check_axioms(result)
    return result


def graphical_building(g: Graph) -> BuildingSet:
    """The building set of all tubes of ``g``."""
    return BuildingSet(g.vertices, enumerate_tubes(g), validate=False)


def components_of(b: BuildingSet, u: Iterable[int]) -> list[Block]:
    """Maximal blocks contained in ``u``; they partition ``u``."""
    return [b.unmask(m) for m in b.kappa(b.mask(u))]


def elementary_blocks(b: BuildingSet) -> list[Block]:
    return [b.unmask(m) for m in b.block_masks() if m in b.elementary_masks]


def is_elementary_by_definition(b: BuildingSet, block: Iterable[int]) -> bool:
    """Direct quantifier: |B| > 1 and every B = B' u B'' with B', B'' != B is disjoint."""
    p = b.block_mask(block)
    if popcount(p) < 2:
        return False
    inside = [m for m in b.block_masks() if m != p and m & ~p == 0]
    for x, y in combinations(inside, 2):
        if x | y == p and x & y:
            return False
    return True


def maximal_strict_subblocks(b: BuildingSet, p: Iterable[int]) -> list[Block]:
    return [b.unmask(m) for m in b.mu(b.block_mask(p))]


def induce(b: BuildingSet, u: Iterable[int], mode: Literal["restriction", "contraction"]) -> BuildingSet:
    """Restriction to ``u`` or contraction of ``u``; original labels are kept."""
    um = b.mask(u)
    if mode == "restriction":
        if not um:
            raise InputError("cannot restrict to the empty set")
        blocks = [b.unmask(m) for m in b.block_masks() if m & ~um == 0]
        return BuildingSet(b.unmask(um), blocks, validate=False)
    if mode == "contraction":
        rest = b.full_mask & ~um
        if not rest:
            raise InputError("contracting the whole ground set leaves nothing")
        found = set()
        for m in b.block_masks():
            if not m & um:
                found.add(m)
            elif m & um == um and m & rest:
                found.add(m & rest)
        return BuildingSet(b.unmask(rest), [b.unmask(m) for m in found], validate=False)
    raise InputError(f"unknown mode {mode!r}")


def is_graphical(b: BuildingSet) -> bool:
    """Whether ``b`` is the tube set of some graph.

    The only candidate graph has the 2-element blocks as edges, so ``b`` is
    graphical exactly when its blocks are the connected subsets of that graph.
    """
    adj = [0] * b.n
    for m in b.block_masks():
        if popcount(m) == 2:
            i, j = bits(m)
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    for m in b.block_masks():
        if not connected_mask(m, adj):
            return False
    count = sum(1 for m in range(1, 1 << b.n) if connected_mask(m, adj))
    return count == len(b)


def is_interval_building(b: BuildingSet) -> bool:
    if b.ground != tuple(range(1, b.n + 1)):
        return False
    return all(blk[-1] - blk[0] + 1 == len(blk) for blk in b.blocks)


def all_singletons(n: int) -> BuildingSet:
    return BuildingSet(range(1, n + 1), [[v] for v in range(1, n + 1)], validate=False)


def standard_example() -> BuildingSet:
    """The 21-block building set on [9] used throughout the tests."""
    labels = "1 2 3 4 5 6 7 8 9 14 25 123 456 789 1234 1235 1456 2456 12345 12456 123456"
    return build_from_blocks(9, [[int(c) for c in word] for word in labels.split()])


def interval_building(n: int, intervals: Iterable[Sequence[int]], close: bool = True) -> BuildingSet:
    """Interval building set on [n] from (i, j) endpoint pairs, optionally closed."""
    blocks = [list(range(i, j + 1)) for i, j in intervals]
    return build_from_blocks(n, blocks, close=close)


def all_intervals(n: int) -> BuildingSet:
    return interval_building(n, [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)], close=False)


def pitman_stanley(n: int) -> BuildingSet:
    return interval_building(n, [(i, i) for i in range(1, n + 1)] + [(1, i) for i in range(2, n + 1)], close=False)


def freehedron(n: int) -> BuildingSet:
    intervals = [(i, i) for i in range(1, n + 1)] + [(1, i) for i in range(2, n + 1)]
    intervals += [(i + 1, n) for i in range(1, n - 1)]
    return interval_building(n, intervals, close=True)
