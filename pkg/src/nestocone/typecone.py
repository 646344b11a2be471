"""Wall-crossing inequalities, type cone descriptions, facet counts,
simpliciality, classic heights and the interval specialization.

Heights live in the space indexed by blocks. Coordinates of connected
components are pinned to zero (this kills the lineality space), so every
normal is stored with the component coordinates deleted.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Iterable, Literal, Mapping, Optional, Sequence

from ._bits import block_key, popcount
from .building import Block, BuildingSet, is_interval_building
from .errors import InputError, InvariantError, NotIntervalError
from .nested import (
    ExchangeFrame,
    _flip_masks,
    _maximal_nested_masks,
    is_valid_frame,
)

Membership = Literal["interior", "boundary", "outside"]


def block_label(block: Sequence[int]) -> str:
    """``14`` for small labels, ``{1,10}`` once some element has two digits."""
    if all(0 <= v <= 9 for v in block):
        return "".join(str(v) for v in block)
    return "{" + ",".join(str(v) for v in block) + "}"


def block_key_string(block: Sequence[int]) -> str:
    return "[" + ",".join(str(v) for v in block) + "]"


def parse_block_key(text: str) -> Block:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"cannot parse block key {text!r}") from None
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise InputError(f"block key {text!r} must be a JSON list of integers")
    return tuple(sorted(data))


@dataclass(frozen=True)
class Inequality:
    """``sum coeffs[B] * h_B > 0`` with component coordinates already removed."""

    coeffs: tuple[tuple[Block, int], ...]

    @classmethod
    def canonical(cls, b: BuildingSet, raw: Mapping[int, int]) -> "Inequality":
        """Drop component coordinates and zeros, divide by the gcd, keep orientation."""
        comps = set(b.component_masks)
        kept = {m: c for m, c in raw.items() if c != 0 and m not in comps}
        if not kept:
            raise InvariantError("normal vanishes once component coordinates are removed")
        g = reduce(gcd, (abs(c) for c in kept.values()))
        items = sorted(((b.unmask(m), c // g) for m, c in kept.items()), key=lambda t: block_key(t[0]))
        return cls(tuple(items))

    def as_dict(self) -> dict[Block, int]:
        return dict(self.coeffs)

    def evaluate(self, h: Mapping[Block, Fraction]) -> Fraction:
        return sum((c * Fraction(h[blk]) for blk, c in self.coeffs), Fraction(0))

    def __str__(self) -> str:
        pos = [(blk, c) for blk, c in self.coeffs if c > 0]
        neg = [(blk, -c) for blk, c in self.coeffs if c < 0]

        def side(terms):
            if not terms:
                return "0"
            return " + ".join((f"{c}" if c != 1 else "") + "h" + block_label(blk) for blk, c in terms)

        return f"{side(pos)} > {side(neg)}"

    def to_json(self) -> dict:
        return {"coeffs": {block_key_string(blk): c for blk, c in self.coeffs}}

    @classmethod
    def from_json(cls, b: BuildingSet, data: dict) -> "Inequality":
        if not isinstance(data, dict) or not isinstance(data.get("coeffs"), dict):
            raise InputError("inequality JSON needs a 'coeffs' object")
        raw = {}
        for key, val in data["coeffs"].items():
            raw[b.block_mask(parse_block_key(key))] = int(val)
        return cls.canonical(b, raw)


def _ineq_sort_key(b: BuildingSet, ineq: Inequality):
    return [(b._index[b.mask(blk)], c) for blk, c in ineq.coeffs]


@dataclass(frozen=True)
class ConeDescription:
    building: BuildingSet = field(compare=False, hash=False, repr=False)
    equalities: tuple[Block, ...]
    inequalities: tuple[Inequality, ...]

    @classmethod
    def of(cls, b: BuildingSet, inequalities: Iterable[Inequality]) -> "ConeDescription":
        unique = sorted(set(inequalities), key=lambda q: _ineq_sort_key(b, q))
        return cls(b, tuple(b.components), tuple(unique))

    def __len__(self) -> int:
        return len(self.inequalities)

    def coordinates(self) -> list[Block]:
        """Non-component blocks, in canonical order (the columns of the matrix)."""
        comps = set(self.building.component_masks)
        return [blk for blk, m in zip(self.building.blocks, self.building.block_masks()) if m not in comps]

    def matrix(self) -> list[list[int]]:
        cols = {blk: k for k, blk in enumerate(self.coordinates())}
        rows = []
        for ineq in self.inequalities:
            row = [0] * len(cols)
            for blk, c in ineq.coeffs:
                row[cols[blk]] = c
            rows.append(row)
        return rows

    def to_json(self) -> dict:
        return {
            "equalities": [list(k) for k in self.equalities],
            "inequalities": [q.to_json() for q in self.inequalities],
        }

    def to_tsv(self) -> str:
        header = "\t".join(block_label(blk) for blk in self.coordinates())
        lines = [header] + ["\t".join(str(x) for x in row) for row in self.matrix()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, b: BuildingSet, data: dict) -> "ConeDescription":
        if not isinstance(data, dict) or "inequalities" not in data:
            raise InputError("cone JSON needs an 'inequalities' field")
        eqs = sorted((tuple(sorted(e)) for e in data.get("equalities", [])), key=block_key)
        if eqs and eqs != b.components:
            raise InputError("cone equalities must be the connected components")
        return cls.of(b, (Inequality.from_json(b, q) for q in data["inequalities"]))


# -- g-vectors and wall inequalities --------------------------------------


def gvector(b: BuildingSet, x: Iterable[int]) -> tuple[int, ...]:
    """Characteristic vector of the block ``x`` over the ground set.

    The projection that kills components is left implicit: component
    coordinates of heights are pinned to zero instead.
    """
    m = b.block_mask(x)
    return tuple((m >> i) & 1 for i in range(b.n))


def _frame_normal(b: BuildingSet, x: int, y: int, p: int) -> dict[int, int]:
    raw: dict[int, int] = {}

    def add(m: int, c: int) -> None:
        raw[m] = raw.get(m, 0) + c

    add(x, 1)
    add(y, 1)
    for k in b.kappa(p & ~(x | y)):
        add(k, 1)
    add(p, -1)
    for k in b.kappa(x & y):
        add(k, -1)
    return raw


def wall_inequality(b: BuildingSet, f: ExchangeFrame, check: bool = True) -> Inequality:
    """Normal of the wall-crossing inequality attached to an exchange frame."""
    if check and not is_valid_frame(b, f):
        raise InputError(f"invalid exchange frame {f}")
    x, y, p = b.block_mask(f.b_out), b.block_mask(f.b_in), b.block_mask(f.parent)
    return Inequality.canonical(b, _frame_normal(b, x, y, p))


def redundant_cone(b: BuildingSet) -> ConeDescription:
    """Wall inequalities of every flip of every maximal nested set."""
    comps = set(b.component_masks)
    seen = set()
    normals = []
    for masks in _maximal_nested_masks(b):
        fs = frozenset(masks)
        for out in masks:
            if out in comps:
                continue
            p, entering, _, _, _ = _flip_masks(b, fs, out)
            key = (min(out, entering), max(out, entering), p)
            if key in seen:
                continue
            seen.add(key)
            normals.append(Inequality.canonical(b, _frame_normal(b, out, entering, p)))
    return ConeDescription.of(b, normals)


def facet_cone(b: BuildingSet) -> ConeDescription:
    """Irredundant facet description: one inequality per elementary block and
    one per pair of maximal strict subblocks of every other non-singleton block."""
    normals = []
    for p in b.block_masks():
        if popcount(p) < 2:
            continue
        mu = b.mu(p)
        if p in b.elementary_masks:
            raw = {m: 1 for m in mu}
            raw[p] = raw.get(p, 0) - 1
            normals.append(Inequality.canonical(b, raw))
            continue
        for i, x in enumerate(mu):
            for y in mu[i + 1:]:
                normals.append(Inequality.canonical(b, _frame_normal(b, x, y, p)))
    return ConeDescription.of(b, normals)


def graphical_facet_cone(g) -> ConeDescription:
    """Facets h_{s-v'} + h_{s-v} > h_s + h_{s-v-v'} from non-disconnecting vertices.

    The last term is a sum over the connected components of s - {v, v'}.
    """
    from .building import graphical_building
    from .graphs import graphical_maximal_pairs

    b = graphical_building(g)
    normals = []
    for x, y, s in graphical_maximal_pairs(g):
        normals.append(Inequality.canonical(b, _frame_normal(b, b.mask(x), b.mask(y), b.mask(s))))
    return ConeDescription.of(b, normals)


def facet_count(b: BuildingSet) -> int:
    """Number of elementary blocks plus C(|mu(P)|, 2) over the other non-singleton blocks."""
    total = 0
    for p in b.block_masks():
        if popcount(p) < 2:
            continue
        if p in b.elementary_masks:
            total += 1
        else:
            total += comb(len(b.mu(p)), 2)
    return total


def graphical_facet_count(g) -> int:
    from .graphs import enumerate_tubes, non_disconnecting

    return sum(comb(len(non_disconnecting(g, t)), 2) for t in enumerate_tubes(g) if len(t) > 1)


def cone_dimensions(b: BuildingSet) -> tuple[int, int]:
    """(rays, dimension) of the nested fan: non-component blocks and ground minus components."""
    c = len(b.component_masks)
    return len(b) - c, b.n - c


def is_simplicial(b: BuildingSet) -> bool:
    """Every block with at least three maximal strict subblocks is elementary."""
    return all(
        p in b.elementary_masks
        for p in b.block_masks()
        if popcount(p) > 1 and len(b.mu(p)) >= 3
    )


# -- heights ---------------------------------------------------------------


@dataclass(frozen=True)
class HeightVector:
    building: BuildingSet = field(compare=False, hash=False, repr=False)
    values: tuple[tuple[Block, Fraction], ...]

    @classmethod
    def of(cls, b: BuildingSet, values: Mapping) -> "HeightVector":
        data = {}
        for blk, val in values.items():
            m = b.block_mask(blk)
            data[b.unmask(m)] = Fraction(val)
        missing = [blk for blk in b.blocks if blk not in data]
        if missing:
            raise InputError(f"height vector misses blocks {[list(x) for x in missing[:5]]}")
        return cls(b, tuple((blk, data[blk]) for blk in b.blocks))

    def as_dict(self) -> dict[Block, Fraction]:
        return dict(self.values)

    def __getitem__(self, block) -> Fraction:
        return self.as_dict()[tuple(sorted(block))]

    def normalized(self) -> "HeightVector":
        """Shift by a linear function so every connected component gets height 0."""
        b = self.building
        h = self.as_dict()
        shift = {}
        for k in b.components:
            per = -h[k] / len(k)
            for v in k:
                shift[v] = per
        return HeightVector(b, tuple((blk, val + sum(shift[v] for v in blk)) for blk, val in self.values))

    def is_normalized(self) -> bool:
        h = self.as_dict()
        return all(h[k] == 0 for k in self.building.components)

    def to_json(self) -> dict:
        return {"heights": {block_key_string(blk): str(val) for blk, val in self.values}}

    @classmethod
    def from_json(cls, b: BuildingSet, data) -> "HeightVector":
        if isinstance(data, dict) and "heights" in data:
            data = data["heights"]
        if isinstance(data, list):
            if len(data) != len(b):
                raise InputError(f"expected {len(b)} heights, got {len(data)}")
            return cls.of(b, {blk: _fraction(v) for blk, v in zip(b.blocks, data)})
        if isinstance(data, dict):
            vals = {}
            for key, v in data.items():
                blk = parse_block_key(key)
                if blk in vals:
                    raise InputError(f"duplicate height for {list(blk)}")
                vals[blk] = _fraction(v)
            if len(vals) != len(b):
                raise InputError(f"expected {len(b)} heights, got {len(vals)}")
            return cls.of(b, vals)
        raise InputError("heights must be a list or an object keyed by blocks")


def _fraction(v) -> Fraction:
    try:
        if isinstance(v, float):
            raise InputError("heights must be exact; give them as integers or 'p/q' strings")
        return Fraction(v)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"cannot read {v!r} as a rational number") from None


def classic_height(
    b: BuildingSet, variant: Literal["devadoss", "postnikov"], normalize: bool = True
) -> HeightVector:
    """-3^|B| or minus the number of blocks inside B, then shifted to vanish on components."""
    masks = b.block_masks()
    if variant == "devadoss":
        vals = {blk: Fraction(-(3 ** len(blk))) for blk in b.blocks}
    elif variant == "postnikov":
        vals = {
            b.unmask(p): Fraction(-sum(1 for c in masks if c & ~p == 0))
            for p in masks
        }
    else:
        raise InputError(f"unknown height variant {variant!r}")
    h = HeightVector.of(b, vals)
    return h.normalized() if normalize else h


def height_membership(
    b: BuildingSet, h: HeightVector, cone: Optional[ConeDescription] = None
) -> Membership:
    """Position of ``h`` relative to the type cone.

    ``h`` is first shifted to vanish on components; that shift is a linear
    function and does not move ``h`` across any wall.
    """
    if h.building != b:
        raise InputError("height vector belongs to a different building set")
    if cone is None:
        cone = facet_cone(b)
    values = h.normalized().as_dict()
    slacks = [q.evaluate(values) for q in cone.inequalities]
    if all(s > 0 for s in slacks):
        return "interior"
    if all(s >= 0 for s in slacks):
        return "boundary"
    return "outside"


# -- interval building sets -------------------------------------------------


@dataclass(frozen=True)
class IntervalRow:
    i: int
    j: int
    ell: int
    r: int
    elementary: bool
    sequence: tuple[int, ...]
    inequality: Inequality

    def to_json(self) -> dict:
        return {
            "block": [self.i, self.j],
            "l": self.ell,
            "r": self.r,
            "kind": "s" if self.elementary else "t",
            "sequence": list(self.sequence),
            "inequality": str(self.inequality),
        }


@dataclass(frozen=True)
class IntervalProfile:
    rows: tuple[IntervalRow, ...]
    cone: ConeDescription

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows], "cone": self.cone.to_json()}


def interval_profile(b: BuildingSet) -> IntervalProfile:
    """The l/r data and the facet description of an interval building set."""
    if not is_interval_building(b):
        bad = next(
            (blk for blk in b.blocks if blk[-1] - blk[0] + 1 != len(blk)),
            None,
        )
        what = f"block {list(bad)} is not an interval" if bad else "ground set must be 1..n"
        raise NotIntervalError(what)

    def has(i: int, j: int) -> bool:
        return b.is_block_mask(((1 << (j - i + 1)) - 1) << (i - 1))

    def mask(i: int, j: int) -> int:
        return ((1 << (j - i + 1)) - 1) << (i - 1)

    def ell(i: int, j: int) -> int:
        return min(k for k in range(i + 1, j + 1) if has(k, j))

    def r(i: int, j: int) -> int:
        return max(k for k in range(i, j) if has(i, k))

    rows = []
    normals = []
    for blk in b.blocks:
        if len(blk) < 2:
            continue
        i, j = blk[0], blk[-1]
        lo, hi = ell(i, j), r(i, j)
        raw: dict[int, int] = {}
        if hi < lo:
            seq = [i, hi + 1]
            while seq[-1] != j + 1:
                seq.append(r(seq[-1], j + 1) + 1)
            for a, c in zip(seq, seq[1:]):
                raw[mask(a, c - 1)] = raw.get(mask(a, c - 1), 0) + 1
            raw[mask(i, j)] = raw.get(mask(i, j), 0) - 1
        else:
            seq = [lo]
            while seq[-1] != hi + 1:
                seq.append(r(seq[-1], hi + 1) + 1)
            raw[mask(i, hi)] = 1
            raw[mask(lo, j)] = raw.get(mask(lo, j), 0) + 1
            raw[mask(i, j)] = raw.get(mask(i, j), 0) - 1
            for a, c in zip(seq, seq[1:]):
                raw[mask(a, c - 1)] = raw.get(mask(a, c - 1), 0) - 1
        ineq = Inequality.canonical(b, raw)
        normals.append(ineq)
        rows.append(IntervalRow(i, j, lo, hi, hi < lo, tuple(seq), ineq))
    return IntervalProfile(tuple(rows), ConeDescription.of(b, normals))


_TERM = re.compile(r"^(\d*)\s*h(\{[\d,\s]+\}|\d+)$")


def parse_inequality(b: BuildingSet, text: str) -> Inequality:
    """Read ``"h14 + h25 + h3 > h12345"`` (blocks with a two-digit element as ``h{1,10}``).

    A side may be ``0``; heights of components may appear and are dropped.
    """
    if text.count(">") != 1:
        raise InputError(f"inequality {text!r} needs exactly one '>'")
    raw: dict[int, int] = {}
    for sign, side in zip((1, -1), text.split(">")):
        side = side.strip()
        if side == "0":
            continue
        for term in side.split("+"):
            match = _TERM.match(term.strip())
            if not match:
                raise InputError(f"cannot parse term {term.strip()!r}")
            coef = int(match.group(1) or 1)
            label = match.group(2)
            if label.startswith("{"):
                block = [int(v) for v in label[1:-1].split(",")]
            else:
                block = [int(ch) for ch in label]
            m = b.block_mask(block)
            raw[m] = raw.get(m, 0) + sign * coef
    return Inequality.canonical(b, raw)
