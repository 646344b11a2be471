"""Polytopal realizations from heights, and kinematic realizations
{z >= 0 : K z = p} of simplicial type cones."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping, Optional, Sequence, Union

from .building import BuildingSet
from .errors import InputError, InvariantError, NotInteriorError, NotSimplicialError
from .linalg import basic_feasible_solution, rref, solve
from .nested import NestedSet, _is_nested_masks, _maximal_nested_masks, _root_mask
from .typecone import (
    ConeDescription,
    HeightVector,
    block_label,
    facet_cone,
    height_membership,
    is_simplicial,
)


@dataclass(frozen=True)
class Polytope:
    dim: int
    axes: tuple[str, ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    labels: tuple[Optional[NestedSet], ...]
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        verts = []
        for coords, label in zip(self.vertices, self.labels):
            entry: dict = {"coords": [str(x) for x in coords]}
            entry["nested_set"] = [list(blk) for blk in label.blocks] if label else None
            verts.append(entry)
        return {
            "dim": self.dim,
            "axes": list(self.axes),
            "vertices": verts,
            "edges": [list(e) for e in self.edges],
        }


def _edges(tight: Sequence[frozenset]) -> tuple[tuple[int, int], ...]:
    # in a simple polytope two vertices span an edge iff they share all but one facet
    out = []
    for i, j in combinations(range(len(tight)), 2):
        if len(tight[i]) == len(tight[j]) and len(tight[i] & tight[j]) == len(tight[i]) - 1:
            out.append((i, j))
    return tuple(out)


def _vertex(b: BuildingSet, h: Mapping[int, Fraction], masks: Sequence[int]) -> list[Fraction]:
    """Solve sum_{v in B} x_v = h_B over B in the maximal nested set, root by root."""
    fs = frozenset(masks)
    x: list[Optional[Fraction]] = [None] * b.n
    for m in sorted(masks, key=lambda k: bin(k).count("1")):
        r = _root_mask(fs, m)
        if r & (r - 1) or not r:
            raise InvariantError("nested set is not maximal: root is not a singleton")
        i = r.bit_length() - 1
        rest = sum(x[k] for k in range(b.n) if m >> k & 1 and k != i)
        x[i] = h[m] - rest
    return x  # type: ignore[return-value]


def _height_masks(b: BuildingSet, h: HeightVector) -> dict[int, Fraction]:
    return {b.mask(blk): val for blk, val in h.normalized().values}


def vertex_of(b: BuildingSet, h: HeightVector, s: NestedSet) -> list[Fraction]:
    """The vertex of the realization with heights ``h`` attached to ``s``."""
    if not s.is_maximal() or not _is_nested_masks(b, list(s.masks())):
        raise InputError("vertex_of needs a maximal nested set")
    if height_membership(b, h) != "interior":
        raise NotInteriorError("height vector is not in the open type cone")
    hm = _height_masks(b, h)
    x = _vertex(b, hm, list(s.masks()))
    _check_strict(b, hm, x, s.masks())
    return x


def _tight(b: BuildingSet, hm: Mapping[int, Fraction], x: Sequence[Fraction]) -> frozenset[int]:
    return frozenset(m for m in b.block_masks() if sum(x[k] for k in range(b.n) if m >> k & 1) == hm[m])


def _check_strict(b, hm, x, masks) -> None:
    for m in b.block_masks():
        val = sum(x[k] for k in range(b.n) if m >> k & 1)
        if m in masks:
            if val != hm[m]:
                raise InvariantError("vertex does not satisfy its own equations")
        elif not val < hm[m]:
            raise InvariantError("vertex violates a strict inequality of an interior height")


def realize_polytope(b: BuildingSet, h: HeightVector) -> Polytope:
    """One vertex per maximal nested set; edges found from shared tight blocks."""
    if height_membership(b, h) != "interior":
        raise NotInteriorError("height vector is not in the open type cone")
    hm = _height_masks(b, h)
    verts, labels, tight = [], [], []
    for masks in _maximal_nested_masks(b):
        x = _vertex(b, hm, masks)
        verts.append(tuple(x))
        labels.append(NestedSet._from_masks(b, masks))
        tight.append(_tight(b, hm, x))
    axes = tuple(str(v) for v in b.ground)
    return Polytope(b.n, axes, tuple(verts), tuple(labels), _edges(tight))


# -- kinematic realizations --------------------------------------------------


KinematicInput = Union[Mapping[int, object], Sequence[object]]


def _read_p(p: KinematicInput, m: int) -> list[Fraction]:
    if isinstance(p, Mapping):
        try:
            vals = {int(k): Fraction(v) for k, v in p.items()}
        except (ValueError, TypeError, ZeroDivisionError):
            raise InputError("p must map facet indices to rationals") from None
        if set(vals) != set(range(m)):
            raise InputError(f"p must give a value for each facet index 0..{m - 1}")
        out = [vals[i] for i in range(m)]
    else:
        if len(p) != m:
            raise InputError(f"p needs {m} entries, got {len(p)}")
        try:
            out = [Fraction(v) for v in p]
        except (ValueError, TypeError, ZeroDivisionError):
            raise InputError("p entries must be rationals") from None
    for i, v in enumerate(out):
        if v <= 0:
            raise InputError(f"p[{i}] = {v} is not positive")
    return out


def _vertices_by_subsets(k: list[list[int]], p: list[Fraction]) -> list[tuple[Fraction, ...]]:
    m, ncols = len(k), len(k[0])
    found = {}
    for basis in combinations(range(ncols), m):
        sub = [[row[j] for j in basis] for row in k]
        z_b = solve(sub, p)
        if z_b is None or any(v < 0 for v in z_b):
            continue
        z = [Fraction(0)] * ncols
        for j, v in zip(basis, z_b):
            z[j] = v
        found[tuple(z)] = None
    return list(found)


def _vertices_by_pivots(k: list[list[int]], p: list[Fraction]) -> list[tuple[Fraction, ...]]:
    """Walk the graph of feasible bases from a phase-one vertex."""
    m, ncols = len(k), len(k[0])
    start = basic_feasible_solution(k, p)
    if start is None:
        return []
    seen = {frozenset(start[1])}
    queue = [tuple(sorted(start[1]))]
    found = {}
    while queue:
        basis = queue.pop()
        aug = [[row[j] for j in basis] + list(row) + [p[i]] for i, row in enumerate(k)]
        red, piv = rref(aug)
        if piv != list(range(m)):
            raise InvariantError("pivot walk reached a singular basis")
        tab = [r[m:m + ncols] for r in red]
        z_b = [r[-1] for r in red]
        z = [Fraction(0)] * ncols
        for j, v in zip(basis, z_b):
            z[j] = v
        found[tuple(z)] = None
        for j in range(ncols):
            if j in basis:
                continue
            ratios = [(z_b[i] / tab[i][j], i) for i in range(m) if tab[i][j] > 0]
            if not ratios:
                continue
            low = min(r for r, _ in ratios)
            for r, i in ratios:
                if r == low:
                    nb = frozenset(basis) - {basis[i]} | {j}
                    if nb not in seen:
                        seen.add(nb)
                        queue.append(tuple(sorted(nb)))
    return list(found)


def kinematic_polytope(
    b: BuildingSet,
    p: KinematicInput,
    method: str = "auto",
    cone: Optional[ConeDescription] = None,
) -> Polytope:
    """{z >= 0 : K z = p} over the non-component blocks, K the facet normals.

    ``method`` is ``subsets`` (try every candidate zero set), ``pivots``
    (walk feasible bases) or ``auto`` (subsets when there are at most 5000
    candidates).
    """
    if not is_simplicial(b):
        raise NotSimplicialError("the type cone is not simplicial")
    if cone is None:
        cone = facet_cone(b)
    coords = cone.coordinates()
    m = len(cone.inequalities)
    pv = _read_p(p, m)
    if not coords:
        return Polytope(0, (), ((),), (NestedSet._from_masks(b, b.component_masks),), ())
    k = cone.matrix()
    if method == "auto":
        method = "subsets" if comb(len(coords), m) <= 5000 else "pivots"
    if method == "subsets":
        verts = _vertices_by_subsets(k, pv)
    elif method == "pivots":
        verts = _vertices_by_pivots(k, pv)
    else:
        raise InputError(f"unknown vertex method {method!r}")
    verts.sort()
    col_masks = [b.mask(blk) for blk in coords]
    comps = list(b.component_masks)
    labels, tight = [], []
    for z in verts:
        zeros = frozenset(cm for cm, v in zip(col_masks, z) if v == 0)
        tight.append(zeros)
        candidate = list(zeros) + comps
        if len(candidate) == b.n and _is_nested_masks(b, candidate):
            labels.append(NestedSet._from_masks(b, candidate))
        else:
            labels.append(None)
    axes = tuple(block_label(blk) for blk in coords)
    return Polytope(len(coords), axes, tuple(verts), tuple(labels), _edges(tight))


def height_from_slacks(b: BuildingSet, p: KinematicInput, cone: Optional[ConeDescription] = None) -> HeightVector:
    """An interior height whose facet slacks are ``p`` (simplicial type cones).

    Solves K h = p over the non-component coordinates with free coordinates
    set to 0, and pins components to 0.
    """
    if not is_simplicial(b):
        raise NotSimplicialError("the type cone is not simplicial")
    if cone is None:
        cone = facet_cone(b)
    pv = _read_p(p, len(cone.inequalities))
    coords = cone.coordinates()
    values = {blk: Fraction(0) for blk in b.blocks}
    if coords:
        aug = [row + [pv[i]] for i, row in enumerate(cone.matrix())]
        red, piv = rref(aug)
        if len(coords) in piv:
            raise InvariantError("facet normals of a simplicial cone are dependent")
        for row, c in zip(red, piv):
            values[coords[c]] = row[-1]
    return HeightVector.of(b, values)
