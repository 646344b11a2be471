from __future__ import annotations

import pytest

from nestocone import build_from_blocks, graphical_building, standard_example
from nestocone.building import BuildingSet
from nestocone.graphs import Graph, complete_graph, path_graph
from nestocone.nested import NestedSet, _is_nested_masks

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def bcirc() -> BuildingSet:
    return standard_example()


@pytest.fixture
def n_circ(bcirc) -> NestedSet:
    return NestedSet.of(bcirc, [[3], [4], [5], [7], [8], [1, 4], [7, 8, 9], [1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]])


@pytest.fixture
def n_circ_prime(bcirc) -> NestedSet:
    return NestedSet.of(bcirc, [[3], [4], [5], [7], [8], [2, 5], [7, 8, 9], [1, 2, 3, 4, 5], [1, 2, 3, 4, 5, 6]])


@pytest.fixture
def p3() -> Graph:
    return path_graph(3)


@pytest.fixture
def p3b(p3) -> BuildingSet:
    return graphical_building(p3)


@pytest.fixture
def k3b() -> BuildingSet:
    return graphical_building(complete_graph(3))


def singletons(n: int) -> BuildingSet:
    return build_from_blocks(n, [[v] for v in range(1, n + 1)])


# -- brute-force helpers shared by several test modules ---------------------


def brute_maximal_nested(b: BuildingSet) -> set[frozenset[int]]:
    """Depth-first search over blocks in canonical order with nestedness pruning."""
    masks = b.block_masks()
    comps = set(b.component_masks)
    found = set()

    def dfs(start: int, chosen: list[int]) -> None:
        if len(chosen) == b.n:
            if comps <= set(chosen):
                found.add(frozenset(chosen))
            return
        for k in range(start, len(masks)):
            trial = chosen + [masks[k]]
            if _is_nested_masks(b, trial):
                dfs(k + 1, trial)

    dfs(0, [])
    return found


def brute_flip_partner(b: BuildingSet, masks: frozenset[int], out: int) -> list[int]:
    """Every block that can replace ``out`` and keep a maximal nested set."""
    rest = masks - {out}
    comps = set(b.component_masks)
    return [
        m for m in b.block_masks()
        if m not in masks and comps <= rest | {m} and _is_nested_masks(b, list(rest | {m}))
    ]
