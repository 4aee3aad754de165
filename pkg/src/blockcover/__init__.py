"""Minimal blocking sets and irredundant subgroup covers, with brute-force certificates."""

from .blocking import (
    BlockingSet,
    HyperplaneCover,
    compose_blocking_sets,
    dualize,
    is_blocking,
    is_minimal,
    search_minimal,
    undualize,
)
from .gf import GF, FieldSpec, find_irreducible
from .groupcover import (
    FiniteGroup,
    GroupCover,
    Subgroup,
    compose_covers,
    coset_order,
    drop_one_intersection,
    parse_group,
    subgroup_closure,
    verify_cover,
)
from .projgeom import ProjSpace, incident, normalize

__version__ = "0.1.0"
