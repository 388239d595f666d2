"""Finite groups, exact integer linear algebra and (co)homology."""

from .groups import (
    FiniteGroup,
    GroupHom,
    classify_homs,
    cyclic_group,
    describe_group,
    direct_product,
    enumerate_homs,
    groups_isomorphic,
    identity_hom,
    make_group,
    permutation_group,
    subgroup,
    symmetric_group,
)
from .homology import (
    ChainComplex,
    cohomology,
    homology,
    induced_iso_in_degree,
    is_acyclic,
    reduced_homology,
)
from .linalg import (
    FGAbelianGroup,
    IntMatrix,
    determinantal_divisors,
    smith_normal_form,
    sparse_divisors,
)

__all__ = [
    "ChainComplex", "FGAbelianGroup", "FiniteGroup", "GroupHom", "IntMatrix",
    "classify_homs", "cohomology", "cyclic_group", "describe_group", "determinantal_divisors",
    "direct_product", "enumerate_homs", "groups_isomorphic", "homology", "identity_hom",
    "induced_iso_in_degree", "is_acyclic", "make_group", "permutation_group",
    "reduced_homology", "smith_normal_form", "sparse_divisors", "subgroup", "symmetric_group",
]
