"""The cross-checking suite behind ``nestocone verify``."""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from math import comb

from .building import BuildingSet, graphical_building
from .graphs import complete_graph, cycle_graph, path_graph, star_graph
from .instances import graphs_up_to_iso, random_building, random_interval_building
from .oracle import brute_cone, cone_equal, irredundant
from .typecone import (
    classic_height,
    cone_dimensions,
    facet_cone,
    facet_count,
    graphical_facet_cone,
    height_membership,
    interval_profile,
    is_simplicial,
    redundant_cone,
)

log = logging.getLogger(__name__)


FAMILY_COUNTS = {
    "complete": (complete_graph, lambda n: 2 ** (n - 2) * comb(n, 2)),
    "path": (path_graph, lambda n: comb(n, 2)),
    "cycle": (cycle_graph, lambda n: 3 * comb(n, 2) - n),
    "star": (star_graph, lambda n: n - 1 + 2 ** (n - 3) * comb(n - 1, 2)),
}


@dataclass
class Report:
    instances: int = 0
    checks: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    def check(self, name: str, ok: bool, where: str) -> None:
        self.checks[name] += 1
        if not ok:
            self.failures.append({"check": name, "instance": where})
            log.warning("check %s failed on %s", name, where)

    def to_json(self) -> dict:
        return {
            "instances": self.instances,
            "checks": dict(sorted(self.checks.items())),
            "failures": len(self.failures),
            "failed": self.failures,
        }


def _cone_checks(report: Report, b: BuildingSet, where: str, oracle: bool) -> None:
    facets = facet_cone(b)
    report.check("facet_count", facet_count(b) == len(facets), where)
    rays, dim = cone_dimensions(b)
    report.check("simplicial_count", is_simplicial(b) == (len(facets) == rays - dim), where)
    for variant in ("devadoss", "postnikov"):
        report.check(f"{variant}_interior", height_membership(b, classic_height(b, variant), facets) == "interior", where)
    if oracle:
        red = redundant_cone(b)
        report.check("facets_in_redundant", set(facets.inequalities) <= set(red.inequalities), where)
        brute = brute_cone(b)
        report.check("redundant_equals_brute", cone_equal(red, brute), where)
        report.check("oracle_equivalence", cone_equal(facets, irredundant(brute)), where)


def run(max_n: int = 5, seed: int = 0, random_buildings: int = 50, random_intervals: int = 20) -> Report:
    report = Report()
    rng = random.Random(seed)

    for name, (make, formula) in FAMILY_COUNTS.items():
        for n in range(3, max(3, max_n) + 1):
            g = make(n)
            report.instances += 1
            report.check(f"family_{name}", facet_count(graphical_building(g)) == formula(n), f"{name}{n}")

    for g in graphs_up_to_iso(min(max_n, 7)):
        b = graphical_building(g)
        where = f"graph {g.to_json()}"
        report.instances += 1
        connected = len(g.components()) == 1
        _cone_checks(report, b, where, oracle=connected and g.n <= max_n)
        report.check("graphical_facets", cone_equal(facet_cone(b), graphical_facet_cone(g)), where)
        report.check("paths_simplicial", is_simplicial(b) == g.is_path_forest(), where)

    for _ in range(random_buildings):
        n = rng.randint(2, min(6, max(2, max_n + 1)))
        b = random_building(rng, n)
        report.instances += 1
        _cone_checks(report, b, f"building {b.to_json()}", oracle=True)

    for _ in range(random_intervals):
        n = rng.randint(2, 7)
        b = random_interval_building(rng, n)
        where = f"interval {b.to_json()}"
        report.instances += 1
        report.check("interval_simplicial", is_simplicial(b), where)
        report.check("interval_profile", cone_equal(interval_profile(b).cone, facet_cone(b)), where)
        _cone_checks(report, b, where, oracle=False)

    return report

