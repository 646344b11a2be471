import pytest

from nestocone import BuildingSetError, InputError
from nestocone.building import (
    BuildingSet,
    build_from_blocks,
    components_of,
    elementary_blocks,
    freehedron,
    graphical_building,
    induce,
    is_elementary_by_definition,
    is_graphical,
    is_interval_building,
    maximal_strict_subblocks,
    pitman_stanley,
)
from nestocone.graphs import Graph, complete_graph, cycle_graph, star_graph

from conftest import singletons


def blocks_of(text: str) -> list[tuple[int, ...]]:
    return sorted((tuple(int(c) for c in w) for w in text.split()), key=lambda t: (len(t), t))


def test_bcirc_accepted(bcirc):
    assert len(bcirc) == 21
    assert bcirc.n == 9


def test_closure_of_path_hyperedges():
    b = build_from_blocks(3, [[1, 2], [2, 3]], close=True)
    assert list(b.blocks) == blocks_of("1 2 3 12 23 123")


def test_two_singletons():
    b = build_from_blocks(2, [[1], [2]])
    assert b.components == [(1,), (2,)]


def test_axiom_violation_names_pair():
    with pytest.raises(BuildingSetError) as err:
        build_from_blocks(3, [[1], [2], [3], [1, 2], [2, 3]])
    assert err.value.pair == ((1, 2), (2, 3))


def test_missing_singleton_and_empty_block():
    with pytest.raises(BuildingSetError):
        build_from_blocks(2, [[1]])
    with pytest.raises(InputError):
        build_from_blocks(2, [[1], [2], []])
    with pytest.raises(InputError):
        build_from_blocks(2, [[1], [2], [3]])


def test_graphical_building_sizes(p3):
    assert len(graphical_building(p3)) == 6
    assert len(graphical_building(complete_graph(3))) == 7
    assert len(graphical_building(Graph(3))) == 3


def test_components_of(bcirc):
    assert components_of(bcirc, [1, 2, 4, 5, 7, 8]) == blocks_of("7 8 14 25")
    assert components_of(bcirc, []) == []
    assert components_of(bcirc, range(1, 10)) == blocks_of("789 123456")
    with pytest.raises(InputError):
        components_of(bcirc, [10])


def test_elementary(bcirc, p3):
    assert elementary_blocks(bcirc) == blocks_of("14 25 123 456 789")
    assert elementary_blocks(singletons(3)) == []
    for g in (p3, cycle_graph(5), star_graph(4), complete_graph(4)):
        assert set(elementary_blocks(graphical_building(g))) == set(g.edges)


def test_elementary_shortcut_matches_definition(bcirc):
    for blk in bcirc.blocks:
        assert (bcirc.mask(blk) in bcirc.elementary_masks) == is_elementary_by_definition(bcirc, blk)
    # 123 has only singleton maximal subblocks and is elementary
    assert is_elementary_by_definition(bcirc, (1, 2, 3))


def test_mu(bcirc):
    assert maximal_strict_subblocks(bcirc, (1, 2, 3, 4, 5)) == blocks_of("1234 1235")
    assert maximal_strict_subblocks(bcirc, (1, 2, 3)) == blocks_of("1 2 3")
    assert maximal_strict_subblocks(bcirc, (4,)) == []
    with pytest.raises(InputError):
        maximal_strict_subblocks(bcirc, (1, 2))


def test_restriction(bcirc):
    r = induce(bcirc, [1, 2, 4, 5, 7, 8], "restriction")
    assert list(r.blocks) == blocks_of("1 2 4 5 7 8 14 25")
    assert r.ground == (1, 2, 4, 5, 7, 8)
    assert induce(bcirc, range(1, 10), "restriction") == bcirc
    assert induce(r, [1, 2, 4, 5, 7, 8], "restriction") == r


def test_contraction(p3):
    c = induce(graphical_building(p3), [2], "contraction")
    assert c.ground == (1, 3)
    assert list(c.blocks) == [(1,), (3,), (1, 3)]


def test_induce_rejects_bad_input(bcirc):
    with pytest.raises(InputError):
        induce(bcirc, [11], "restriction")
    with pytest.raises(InputError):
        induce(bcirc, [1], "sideways")


def test_is_graphical():
    assert is_graphical(graphical_building(cycle_graph(4)))
    assert not is_graphical(build_from_blocks(3, [[1, 2, 3]], close=True))
    assert is_graphical(singletons(3))


def test_interval_families():
    assert is_interval_building(pitman_stanley(4))
    assert is_interval_building(freehedron(4))
    assert not is_interval_building(graphical_building(complete_graph(3)))


def test_json_round_trip(bcirc):
    assert BuildingSet.from_json(bcirc.to_json()) == bcirc
    b = BuildingSet.from_json({"n": 3, "generators": [[1, 2], [2, 3]], "close": True})
    assert len(b) == 6
    with pytest.raises(InputError):
        BuildingSet.from_json({"blocks": [[1]]})
