"""Test instances: graph families, graphs up to isomorphism, random building sets."""

from __future__ import annotations

import random
from typing import Iterator

import networkx as nx

from .building import BuildingSet, build_from_blocks, interval_building
from .graphs import Graph


def graphs_up_to_iso(max_n: int, connected: bool = False, min_n: int = 1) -> Iterator[Graph]:
    """All graphs on min_n..max_n vertices up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for h in nx.graph_atlas_g():
        k = h.number_of_nodes()
        if k < min_n or k > max_n:
            continue
        if connected and not nx.is_connected(h):
            continue
        yield Graph(k, frozenset((min(u, v) + 1, max(u, v) + 1) for u, v in h.edges()))


def random_building(rng: random.Random, n: int, generators: int | None = None) -> BuildingSet:
    """Closure of random subsets of [n]; mostly pairs and triples, so the
    closure keeps some structure instead of collapsing to a few big blocks."""
    if generators is None:
        generators = rng.randint(1, 2 * n)
    hyper = []
    for _ in range(generators):
        size = min(n, rng.choice((2, 2, 2, 3, 3, 4))) if n >= 2 else 1
        hyper.append(rng.sample(range(1, n + 1), size))
    return build_from_blocks(n, hyper, close=True)


def random_interval_building(rng: random.Random, n: int, count: int | None = None) -> BuildingSet:
    """Closure of a few random intervals of [n] (unions of overlapping intervals are intervals)."""
    if count is None:
        count = rng.randint(1, max(1, 2 * n))
    pairs = []
    for _ in range(count):
        i = rng.randint(1, n)
        j = rng.randint(i, n)
        pairs.append((i, j))
    return interval_building(n, pairs, close=True)
