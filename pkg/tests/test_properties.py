"""Property-based checks on random building sets."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nestocone.building import build_from_blocks, close_masks, is_interval_building
from nestocone.nested import enumerate_maximal_nested_sets, flip, flips
from nestocone.oracle import flip_dependence
from nestocone.typecone import (
    ConeDescription,
    classic_height,
    cone_dimensions,
    facet_cone,
    facet_count,
    height_membership,
    interval_profile,
    is_simplicial,
    wall_inequality,
)

from conftest import brute_maximal_nested


@st.composite
def buildings(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    subsets = st.sets(st.integers(1, n), min_size=2, max_size=n) if n >= 2 else st.just({1})
    gens = draw(st.lists(subsets, max_size=2 * n))
    return build_from_blocks(n, [sorted(s) for s in gens], close=True)


@st.composite
def interval_buildings(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=2 * n))
    blocks = [list(range(min(a, b), max(a, b) + 1)) for a, b in pairs]
    return build_from_blocks(n, blocks, close=True)


common = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@common
@given(buildings())
def test_closure_is_idempotent(b):
    masks = set(b.block_masks())
    assert close_masks(masks, b.n) == masks


@common
@given(buildings(max_n=4))
def test_enumeration_matches_search(b):
    ours = {s.masks() for s in enumerate_maximal_nested_sets(b)}
    assert ours == brute_maximal_nested(b)


@common
@given(buildings())
def test_flip_is_an_involution_and_matches_nullspace(b):
    for s in enumerate_maximal_nested_sets(b)[:60]:
        for frame, t in flips(b, s):
            back_frame, back = flip(b, t, frame.b_in)
            assert back == s and back_frame.b_in == frame.b_out
            assert back_frame.parent == frame.parent
            assert flip_dependence(b, s, t) == wall_inequality(b, frame)


@common
@given(buildings())
def test_counts_and_heights(b):
    cone = facet_cone(b)
    assert facet_count(b) == len(cone)
    rays, dim = cone_dimensions(b)
    assert is_simplicial(b) == (len(cone) == rays - dim)
    for variant in ("devadoss", "postnikov"):
        assert height_membership(b, classic_height(b, variant), cone) == "interior"
    assert ConeDescription.from_json(b, cone.to_json()) == cone


@common
@given(interval_buildings())
def test_interval_profiles(b):
    assert is_interval_building(b)
    assert is_simplicial(b)
    assert interval_profile(b).cone == facet_cone(b)
