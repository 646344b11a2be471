"""Graphs, tubes, tubings and the graphical extremal exchangeable pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from ._bits import bits, block_key, connected_mask, from_mask, popcount
from .errors import InputError, InvalidTubeError

Tube = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertex set {1, ..., n}."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"graph needs n >= 1, got {self.n!r}")
        normalized = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InputError(f"edge {(u, v)} out of range 1..{self.n}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph, rejecting duplicate edges (in either orientation)."""
        seen = set()
        for edge in edges:
            if len(edge) != 2:
                raise InputError(f"edge {list(edge)} must have two endpoints")
            u, v = int(edge[0]), int(edge[1])
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {list(edge)}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @cached_property
    def _adjacency(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return tuple(adj)

    def neighbors(self, v: int) -> set[int]:
        return {i + 1 for i in bits(self._adjacency[v - 1])}

    def mask(self, vertices: Iterable[int]) -> int:
        m = 0
        for v in vertices:
            if not 1 <= v <= self.n:
                raise InputError(f"vertex {v} out of range 1..{self.n}")
            m |= 1 << (v - 1)
        return m

    def is_connected_set(self, vertices: Iterable[int]) -> bool:
        return connected_mask(self.mask(vertices), self._adjacency)

    def components(self) -> list[Tube]:
        remaining = (1 << self.n) - 1
        comps = []
        while remaining:
            seen = frontier = remaining & -remaining
            while frontier:
                nxt = 0
                for i in bits(frontier):
                    nxt |= self._adjacency[i]
                frontier = nxt & ~seen
                seen |= frontier
            comps.append(from_mask(seen, self.vertices))
            remaining &= ~seen
        return sorted(comps, key=block_key)

    def is_path_forest(self) -> bool:
        """Whether the graph is a disjoint union of paths."""
        degree = [popcount(a) for a in self._adjacency]
        if max(degree, default=0) > 2:
            return False
        # with max degree 2, a component is a path iff it is acyclic
        return len(self.edges) == self.n - len(self.components())

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "n" not in data:
            raise InputError("graph JSON needs an 'n' field")
        return cls.from_edges(int(data["n"]), data.get("edges", []))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, i % n + 1) for i in range(1, n + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(1, n + 1), 2)))


def star_graph(n: int) -> Graph:
    """Star with center 1 and leaves 2..n."""
    return Graph(n, frozenset((1, i) for i in range(2, n + 1)))


def _check_tube(g: Graph, t: Sequence[int]) -> Tube:
    tube = tuple(sorted(set(t)))
    if not tube:
        raise InvalidTubeError("tubes are non-empty")
    try:
        ok = g.is_connected_set(tube)
    except InputError as exc:
        raise InvalidTubeError(str(exc)) from None
    if not ok:
        raise InvalidTubeError(f"{list(tube)} does not induce a connected subgraph")
    return tube


def enumerate_tubes(g: Graph) -> list[Tube]:
    """All connected non-empty vertex subsets, ordered by size then lexicographically."""
    adj = g._adjacency
    tubes = [
        from_mask(m, g.vertices)
        for m in range(1, 1 << g.n)
        if connected_mask(m, adj)
    ]
    tubes.sort(key=block_key)
    return tubes


def non_disconnecting(g: Graph, t: Sequence[int]) -> set[int]:
    """Vertices of the tube whose removal leaves it empty or connected."""
    tube = _check_tube(g, t)
    if len(tube) == 1:
        return set(tube)
    m = g.mask(tube)
    return {v for v in tube if connected_mask(m & ~(1 << (v - 1)), g._adjacency)}


def tubes_compatible(g: Graph, t: Sequence[int], t2: Sequence[int]) -> bool:
    """Nested, or disjoint and non-adjacent."""
    a, b = set(_check_tube(g, t)), set(_check_tube(g, t2))
    if a <= b or b <= a:
        return True
    if a & b:
        return False
    return not g.is_connected_set(a | b)


def enumerate_maximal_tubings(g: Graph) -> list[tuple[Tube, ...]]:
    """Maximal tubings as maximal cliques of the tube compatibility graph.

    Graphical nested complexes are flag, so cliques suffice. Each tubing is
    returned in canonical tube order and the list itself is sorted.
    """
    tubes = enumerate_tubes(g)
    masks = [g.mask(t) for t in tubes]
    adj = g._adjacency
    compat = nx.Graph()
    compat.add_nodes_from(range(len(tubes)))
    for i, j in combinations(range(len(tubes)), 2):
        a, b = masks[i], masks[j]
        inter = a & b
        if inter == a or inter == b or (not inter and not connected_mask(a | b, adj)):
            compat.add_edge(i, j)
    tubings = [tuple(tubes[i] for i in sorted(clique)) for clique in nx.find_cliques(compat)]
    tubings.sort(key=lambda tb: [block_key(t) for t in tb])
    return tubings


def graphical_maximal_pairs(g: Graph) -> list[tuple[Tube, Tube, Tube]]:
    """Triples (s - v', s - v, s) for tubes s and distinct non-disconnecting v < v'."""
    out = []
    for s in enumerate_tubes(g):
        if len(s) < 2:
            continue
        for v, w in combinations(sorted(non_disconnecting(g, s)), 2):
            out.append(
                (tuple(x for x in s if x != w), tuple(x for x in s if x != v), s)
            )
    return out
