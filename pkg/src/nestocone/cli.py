"""Command-line front end.

Exit codes: 0 success, 1 when a construction does not apply (not interval,
not simplicial, height not interior, or a failing ``verify``), 2 for
malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .building import BuildingSet, elementary_blocks, graphical_building, is_graphical
from .errors import DomainError, InputError
from .graphs import Graph, enumerate_maximal_tubings, enumerate_tubes
from .nested import enumerate_maximal_nested_sets, flips, nested_set_from_json
from .oracle import brute_cone, irredundant
from .realize import kinematic_polytope, realize_polytope
from .typecone import (
    HeightVector,
    block_label,
    classic_height,
    cone_dimensions,
    facet_cone,
    facet_count,
    height_membership,
    interval_profile,
    is_simplicial,
    redundant_cone,
)

log = logging.getLogger("nestocone")

VERBS = (
    "tubes", "building", "nested", "flips", "typecone", "count", "simplicial",
    "heights", "realize", "kinematic", "interval", "verify",
)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _load_building(args) -> tuple[BuildingSet, Optional[Graph]]:
    if args.graph and args.building:
        raise InputError("give exactly one of --graph and --building")
    if args.graph:
        g = Graph.from_json(_load_json(args.graph))
        return graphical_building(g), g
    if args.building:
        return BuildingSet.from_json(_load_json(args.building)), None
    raise InputError("this verb needs --graph FILE or --building FILE")


def _blocks(blocks) -> list[list[int]]:
    return [list(x) for x in blocks]


def _emit(args, data, rows: Optional[list[list]] = None) -> None:
    if args.format == "tsv" and rows is not None:
        for row in rows:
            sys.stdout.write("\t".join(str(x) for x in row) + "\n")
    else:
        sys.stdout.write(json.dumps(data, indent=None if args.compact else 2) + "\n")


def _label_rows(blocks) -> list[list[str]]:
    return [[block_label(x)] for x in blocks]


def cmd_tubes(args) -> int:
    if not args.graph:
        raise InputError("tubes needs --graph FILE")
    g = Graph.from_json(_load_json(args.graph))
    tubes = enumerate_tubes(g)
    data = {"count": len(tubes), "tubes": _blocks(tubes)}
    if args.tubings:
        tubings = enumerate_maximal_tubings(g)
        data["maximal_tubings"] = [_blocks(t) for t in tubings]
    _emit(args, data, _label_rows(tubes))
    return 0


def cmd_building(args) -> int:
    b, _ = _load_building(args)
    data = b.to_json()
    data["components"] = _blocks(b.components)
    data["elementary"] = _blocks(elementary_blocks(b))
    data["graphical"] = is_graphical(b)
    _emit(args, data, _label_rows(b.blocks))
    return 0


def cmd_nested(args) -> int:
    b, _ = _load_building(args)
    sets = enumerate_maximal_nested_sets(b)
    data: dict = {"count": len(sets)}
    if not args.count:
        data["nested_sets"] = [_blocks(s.blocks) for s in sets]
    rows = [[" ".join(block_label(x) for x in s.blocks)] for s in sets]
    _emit(args, data, [[len(sets)]] if args.count else rows)
    return 0


def cmd_flips(args) -> int:
    b, _ = _load_building(args)
    if args.nested:
        sources = [nested_set_from_json(b, _load_json(args.nested))]
    else:
        sources = enumerate_maximal_nested_sets(b)
    out, rows = [], []
    for s in sources:
        for frame, s2 in flips(b, s):
            out.append({"from": _blocks(s.blocks), "to": _blocks(s2.blocks), "frame": frame.to_json()})
            rows.append([block_label(frame.b_out), block_label(frame.b_in), block_label(frame.parent), *frame.pivots])
    _emit(args, {"flips": out}, rows)
    return 0


def cmd_typecone(args) -> int:
    b, _ = _load_building(args)
    if args.redundant:
        cone = redundant_cone(b)
    elif args.oracle:
        cone = irredundant(brute_cone(b))
    else:
        cone = facet_cone(b)
    if args.format == "tsv":
        sys.stdout.write(cone.to_tsv())
    else:
        _emit(args, cone.to_json())
    return 0


def cmd_count(args) -> int:
    b, _ = _load_building(args)
    rays, dim = cone_dimensions(b)
    data = {"facets": facet_count(b), "rays": rays, "dim": dim, "simplicial": is_simplicial(b)}
    _emit(args, data, [list(data.keys()), list(data.values())])
    return 0


def cmd_simplicial(args) -> int:
    b, _ = _load_building(args)
    rays, dim = cone_dimensions(b)
    bad = [
        b.unmask(p) for p in b.block_masks()
        if len(b.mu(p)) >= 3 and p not in b.elementary_masks
    ]
    data = {
        "simplicial": is_simplicial(b),
        "facets": facet_count(b),
        "rays_minus_dim": rays - dim,
        "obstructions": _blocks(bad),
    }
    _emit(args, data, [["simplicial", data["simplicial"]], ["facets", data["facets"]]])
    return 0


def _heights(args, b: BuildingSet) -> HeightVector:
    if getattr(args, "heights", None):
        return HeightVector.from_json(b, _load_json(args.heights))
    variant = "postnikov" if getattr(args, "postnikov", False) else "devadoss"
    return classic_height(b, variant)


def cmd_heights(args) -> int:
    b, _ = _load_building(args)
    if args.check:
        h = HeightVector.from_json(b, _load_json(args.check))
        status = height_membership(b, h)
        _emit(args, {"membership": status}, [[status]])
        return 0
    h = _heights(args, b)
    data = h.to_json()
    data["membership"] = height_membership(b, h)
    _emit(args, data, [[block_label(blk), str(v)] for blk, v in h.values])
    return 0


def _polytope_rows(poly) -> list[list]:
    rows = []
    for coords, label in zip(poly.vertices, poly.labels):
        name = " ".join(block_label(x) for x in label.blocks) if label else ""
        rows.append([str(x) for x in coords] + [name])
    return rows


def cmd_realize(args) -> int:
    b, _ = _load_building(args)
    poly = realize_polytope(b, _heights(args, b))
    _emit(args, poly.to_json(), _polytope_rows(poly))
    return 0


def cmd_kinematic(args) -> int:
    b, _ = _load_building(args)
    cone = facet_cone(b)
    if args.p:
        p = _load_json(args.p)
        if isinstance(p, dict):
            p = {k: _exact(v) for k, v in p.items()}
        elif isinstance(p, list):
            p = [_exact(v) for v in p]
        else:
            raise InputError("--p must be a JSON object or list")
    else:
        p = [1] * len(cone.inequalities)
    poly = kinematic_polytope(b, p, cone=cone)
    _emit(args, poly.to_json(), _polytope_rows(poly))
    return 0


def _exact(v):
    if isinstance(v, float):
        raise InputError("kinematic parameters must be exact; use integers or 'p/q' strings")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"cannot read {v!r} as a rational number") from None


def cmd_interval(args) -> int:
    b, _ = _load_building(args)
    prof = interval_profile(b)
    rows = [[f"[{r.i},{r.j}]", r.ell, r.r, str(r.inequality)] for r in prof.rows]
    _emit(args, prof.to_json(), rows)
    return 0


def cmd_verify(args) -> int:
    from .verify import run

    report = run(max_n=args.max_n, seed=args.seed, random_buildings=args.random)
    data = report.to_json()
    _emit(args, data, [["instances", data["instances"]], ["failures", data["failures"]]])
    return 0 if data["failures"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestocone",
        description="Nested complexes, nested fans and type cones of nestohedra.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name: str, help_text: str, needs_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("--graph", metavar="FILE", help="graph JSON")
            p.add_argument("--building", metavar="FILE", help="building-set JSON")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--compact", action="store_true", help="single-line JSON")
        return p

    p = verb("tubes", "enumerate tubes of a graph")
    p.add_argument("--tubings", action="store_true", help="also list maximal tubings")
    verb("building", "validate or close a building set")
    p = verb("nested", "enumerate maximal nested sets")
    p.add_argument("--count", action="store_true", help="only count them")
    p = verb("flips", "flips with their exchange frames")
    p.add_argument("--nested", metavar="FILE", help="nested-set JSON (default: all maximal ones)")
    p = verb("typecone", "type cone description")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--redundant", action="store_true", help="all wall inequalities")
    mode.add_argument("--irredundant", action="store_true", help="facet description (default)")
    mode.add_argument("--oracle", action="store_true", help="brute-force nullspaces + LP redundancy removal")
    verb("count", "facet, ray and dimension counts")
    verb("simplicial", "simpliciality of the type cone")
    p = verb("heights", "classic heights or a membership check")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--devadoss", action="store_true")
    kind.add_argument("--postnikov", action="store_true")
    kind.add_argument("--check", metavar="FILE", help="height JSON to test")
    p = verb("realize", "vertices of the realization for a height")
    p.add_argument("--heights", metavar="FILE", help="height JSON (default: devadoss)")
    p.add_argument("--postnikov", action="store_true", help="use the postnikov height")
    p = verb("kinematic", "kinematic realization of a simplicial type cone")
    p.add_argument("--p", metavar="FILE", help="JSON map facet index -> positive rational (default: all 1)")
    verb("interval", "interval building-set profile")
    p = verb("verify", "run the cross-checking suite", needs_input=False)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=50, help="number of random building sets")
    return parser


HANDLERS = {name: globals()[f"cmd_{name}"] for name in VERBS}


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return HANDLERS[args.verb](args)
    except DomainError as exc:
        print(f"nestocone: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"nestocone: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
