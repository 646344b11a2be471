"""Brute-force checks that share no formula with the type cone module.

The wall-crossing dependences come from exact nullspaces of g-vector
matrices, adjacency comes from comparing maximal nested sets directly, and
redundancy is decided by exact phase-one linear programs.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import permutations
from math import lcm

from .building import BuildingSet
from .errors import InputError, InvariantError
from .linalg import feasible_point, nullspace, transpose
from .nested import NestedSet, _maximal_nested_masks
from .typecone import ConeDescription, Inequality


def _dependence(b: BuildingSet, masks: frozenset[int], masks2: frozenset[int]) -> Inequality:
    union = sorted(masks | masks2, key=b._sort_key)
    if len(union) != b.n + 1:
        raise InputError("nested sets are not adjacent")
    out = next(iter(masks - masks2))
    entering = next(iter(masks2 - masks))
    # columns are characteristic vectors; component columns absorb the lineality
    mat = [[(m >> i) & 1 for m in union] for i in range(b.n)]
    kernel = nullspace(mat)
    if len(kernel) != 1:
        raise InvariantError(f"wall dependence has nullspace dimension {len(kernel)}")
    alpha = dict(zip(union, kernel[0]))
    total = alpha[out] + alpha[entering]
    if total == 0:
        raise InvariantError("exchanged blocks have cancelling coefficients")
    scale = Fraction(2) / total
    alpha = {m: a * scale for m, a in alpha.items()}
    den = lcm(*(a.denominator for a in alpha.values()))
    return Inequality.canonical(b, {m: int(a * den) for m, a in alpha.items()})


def flip_dependence(b: BuildingSet, s: NestedSet, s2: NestedSet) -> Inequality:
    """The unique dependence among the g-vectors of two adjacent maximal nested sets."""
    m1, m2 = s.masks(), s2.masks()
    if not (s.is_maximal() and s2.is_maximal()) or len(m1 - m2) != 1:
        raise InputError("flip_dependence needs two adjacent maximal nested sets")
    return _dependence(b, m1, m2)


def adjacent_pairs(b: BuildingSet) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Unordered pairs of maximal nested sets sharing all but one block."""
    comps = set(b.component_masks)
    groups: dict[frozenset[int], list[frozenset[int]]] = defaultdict(list)
    for masks in _maximal_nested_masks(b):
        fs = frozenset(masks)
        for m in masks:
            if m not in comps:
                groups[fs - {m}].append(fs)
    pairs = []
    for members in groups.values():
        if len(members) != 2:
            raise InvariantError(f"a ridge lies in {len(members)} maximal cones")
        pairs.append((members[0], members[1]))
    return pairs


def brute_cone(b: BuildingSet) -> ConeDescription:
    """Nullspace dependences over every adjacent pair, deduplicated."""
    return ConeDescription.of(b, (_dependence(b, x, y) for x, y in adjacent_pairs(b)))


def irredundant(c: ConeDescription, method: str = "support") -> ConeDescription:
    """Keep the inequalities that define facets.

    ``support`` (default): inequality i is kept when some h has n_i.h = 0 and
    n_j.h >= 1 for j != i. Writing n_j.h = 1 + s_j and eliminating the free h
    leaves, for every y in the left kernel of the normal matrix,
    sum_{j != i} y_j (1 + s_j) = 0 with s >= 0, a phase-one feasibility problem.

    ``farkas``: inequality i is dropped when n_i is a nonnegative combination
    of the other normals. Same answer, but the LP has one row per coordinate
    instead of one per left-kernel vector, which is smaller for long lists.
    """
    # duplicates were merged when the description was built
    c = ConeDescription.of(c.building, c.inequalities)
    ineqs = list(c.inequalities)
    if len(ineqs) <= 1:
        return c
    a = c.matrix()
    m = len(a)
    kept = []
    if method == "support":
        left = [_integral(y) for y in nullspace(transpose(a), ncols=m)]
        for i in range(m):
            rows = [y[:i] + y[i + 1:] for y in left]
            rhs = [-sum(row) for row in rows]
            if feasible_point(rows, rhs) is not None:
                kept.append(ineqs[i])
    elif method == "farkas":
        for i in range(m):
            cols = transpose(a[:i] + a[i + 1:])
            if feasible_point(cols, a[i]) is None:
                kept.append(ineqs[i])
    else:
        raise InputError(f"unknown redundancy method {method!r}")
    return ConeDescription.of(c.building, kept)


def _integral(v: list[Fraction]) -> list[int]:
    den = lcm(*(x.denominator for x in v))
    return [int(x * den) for x in v]


def cone_equal(c1: ConeDescription, c2: ConeDescription) -> bool:
    if c1.building != c2.building:
        raise InputError("cones over different building sets")
    return c1.equalities == c2.equalities and set(c1.inequalities) == set(c2.inequalities)


# -- generalized permutahedron cross-check --------------------------------


def minkowski_vertex_count(b: BuildingSet) -> int:
    """Vertices of the Minkowski sum of the simplices of all blocks.

    Every generic direction lies in a chamber of the braid arrangement, so it
    suffices to try one direction per ordering of the ground set: in each
    simplex the minimizer is the block element ranked first.
    """
    found = set()
    masks = b.block_masks()
    for order in permutations(range(b.n)):
        rank = {pos: k for k, pos in enumerate(order)}
        point = [0] * b.n
        for m in masks:
            best = min((i for i in range(b.n) if m >> i & 1), key=rank.__getitem__)
            point[best] += 1
        found.add(tuple(point))
    return len(found)


def minkowski_vertices_from_nested(b: BuildingSet) -> set[tuple[int, ...]]:
    """Minimizers of c = sum of chi_B over B in N on the Minkowski sum, one
    direction per maximal nested set N. Any positive weights would do; the
    check below confirms each simplex has a unique minimizer."""
    found = set()
    masks = b.block_masks()
    for nested in _maximal_nested_masks(b):
        c = [sum(1 for m in nested if m >> i & 1) for i in range(b.n)]
        point = [0] * b.n
        for m in masks:
            choices = [i for i in range(b.n) if m >> i & 1]
            low = min(c[i] for i in choices)
            winners = [i for i in choices if c[i] == low]
            if len(winners) != 1:
                raise InvariantError("direction is not generic for a block simplex")
            point[winners[0]] += 1
        found.add(tuple(point))
    return found
