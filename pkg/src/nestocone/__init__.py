"""Nested complexes, nested fans and the type cones of graph associahedra
and nestohedra, in exact arithmetic."""

from .building import (
    BuildingSet,
    build_from_blocks,
    components_of,
    elementary_blocks,
    graphical_building,
    induce,
    is_graphical,
    maximal_strict_subblocks,
    standard_example,
)
from .errors import (
    BuildingSetError,
    DomainError,
    InputError,
    InvalidTubeError,
    NotInteriorError,
    NotIntervalError,
    NotSimplicialError,
)
from .graphs import (
    Graph,
    enumerate_maximal_tubings,
    enumerate_tubes,
    graphical_maximal_pairs,
    non_disconnecting,
    tubes_compatible,
)
from .nested import (
    ExchangeFrame,
    NestedSet,
    enumerate_maximal_nested_sets,
    exchange_witnesses,
    flips,
    is_nested_set,
    maximal_exchange_frames,
    roots,
)
from .oracle import brute_cone, cone_equal, flip_dependence, irredundant
from .realize import Polytope, kinematic_polytope, realize_polytope, vertex_of
from .typecone import (
    ConeDescription,
    HeightVector,
    Inequality,
    classic_height,
    facet_cone,
    facet_count,
    gvector,
    height_membership,
    interval_profile,
    is_simplicial,
    redundant_cone,
    wall_inequality,
)

__version__ = "0.1.0"
