from itertools import combinations
from math import comb, factorial

import networkx as nx
import pytest

from nestocone import InputError, InvalidTubeError
from nestocone.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    enumerate_maximal_tubings,
    enumerate_tubes,
    graphical_maximal_pairs,
    non_disconnecting,
    path_graph,
    star_graph,
    tubes_compatible,
)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def nx_tubes(g: Graph) -> set[tuple[int, ...]]:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    out = set()
    for k in range(1, g.n + 1):
        for sub in combinations(g.vertices, k):
            if nx.is_connected(h.subgraph(sub)):
                out.add(sub)
    return out


def test_path3_tubes(p3):
    assert enumerate_tubes(p3) == [(1,), (2,), (3,), (1, 2), (2, 3), (1, 2, 3)]


def test_edgeless_tubes():
    assert enumerate_tubes(Graph(2)) == [(1,), (2,)]


def test_k3_tubes_are_all_subsets():
    assert len(enumerate_tubes(complete_graph(3))) == 7


@pytest.mark.parametrize("g", [path_graph(4), cycle_graph(5), star_graph(5), complete_graph(4), Graph(4, frozenset({(1, 2), (3, 4)}))])
def test_tubes_match_networkx(g):
    tubes = enumerate_tubes(g)
    assert set(tubes) == nx_tubes(g)
    assert tubes == sorted(tubes, key=lambda t: (len(t), t))


def test_non_disconnecting(p3):
    assert non_disconnecting(p3, (1, 2, 3)) == {1, 3}
    assert non_disconnecting(p3, (2,)) == {2}
    assert non_disconnecting(complete_graph(3), (1, 2, 3)) == {1, 2, 3}


def test_non_disconnecting_rejects_non_tube(p3):
    with pytest.raises(InvalidTubeError):
        non_disconnecting(p3, (1, 3))


def test_compatibility():
    p3 = path_graph(3)
    assert tubes_compatible(p3, (1,), (1, 2))
    assert not tubes_compatible(p3, (1,), (2,))
    assert tubes_compatible(path_graph(4), (1,), (3, 4))
    with pytest.raises(InvalidTubeError):
        tubes_compatible(p3, (1, 3), (2,))


def test_maximal_tubings_small(p3):
    assert len(enumerate_maximal_tubings(p3)) == 5
    assert len(enumerate_maximal_tubings(complete_graph(3))) == 6
    assert enumerate_maximal_tubings(Graph(1)) == [((1,),)]


@pytest.mark.parametrize("n", range(1, 7))
def test_maximal_tubings_counts(n):
    paths = enumerate_maximal_tubings(path_graph(n))
    assert len(paths) == catalan(n)
    assert len(enumerate_maximal_tubings(complete_graph(n))) == factorial(n)
    for t in paths:
        assert len(t) == n and (tuple(range(1, n + 1)) in t)


def test_tubings_of_disconnected_graph_contain_components():
    g = Graph(4, frozenset({(1, 2), (3, 4)}))
    tubings = enumerate_maximal_tubings(g)
    assert len(tubings) == 4
    for t in tubings:
        assert (1, 2) in t and (3, 4) in t and len(t) == 4


def test_graphical_pairs_path3(p3):
    assert graphical_maximal_pairs(p3) == [((1,), (2,), (1, 2)), ((2,), (3,), (2, 3)), ((1, 2), (2, 3), (1, 2, 3))]


def test_graphical_pairs_k4_count():
    # permutahedron facet count 2^(n-2) C(n,2) with n = 4
    assert len(graphical_maximal_pairs(complete_graph(4))) == 24


def test_graphical_pairs_edgeless():
    assert graphical_maximal_pairs(Graph(3)) == []


def test_graph_validation():
    with pytest.raises(InputError):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(InputError):
        Graph(3, frozenset({(1, 4)}))
    with pytest.raises(InputError):
        Graph.from_edges(3, [[1, 2], [2, 1]])
    with pytest.raises(InputError):
        Graph(0)


def test_graph_json_round_trip():
    g = Graph.from_json({"n": 4, "edges": [[2, 1], [2, 3]]})
    assert g.edges == frozenset({(1, 2), (2, 3)})
    assert Graph.from_json(g.to_json()) == g


def test_path_forest():
    assert path_graph(5).is_path_forest()
    assert Graph(4, frozenset({(1, 2), (3, 4)})).is_path_forest()
    assert not cycle_graph(4).is_path_forest()
    assert not star_graph(4).is_path_forest()
