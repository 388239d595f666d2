"""Finite simplicial models of orbispaces: Borel constructions, stabilizers, charts and π₁.

Subpackages and modules:

- :mod:`orbikit.simplicial` normalized simplicial sets, products, quotients, fibers
- :mod:`orbikit.algebra` finite groups, Smith normal form, (co)homology
- :mod:`orbikit.fundamental` edge-path π₁, Tietze moves, coset enumeration, covers
- :mod:`orbikit.borel` bar construction EG and Borel spaces
- :mod:`orbikit.orbispace` orbispace records, stabilizers, charts, exact sequences
- :mod:`orbikit.cli` scenario files and reports
"""

from .algebra import (
    FGAbelianGroup,
    FiniteGroup,
    GroupHom,
    cohomology,
    cyclic_group,
    homology,
    symmetric_group,
)
from .borel import bar_EG, borel_construction, equivariant_cohomology, equivariant_homology, induced_borel_map
from .errors import OrbikitError
from .fundamental import (
    GroupPresentation,
    coset_enumerate,
    fundamental_group,
    pi1_presentation,
    tietze_simplify,
    universal_cover,
)
from .library import builtin_complex, octahedron, path_complex, simplex_boundary
from .orbispace import (
    LESSpec,
    Orbispace,
    SymbolicOrbispace,
    classify_vertical_maps,
    compare_orbispaces,
    extract_chart,
    fiber_report,
    les_solve,
    localize_map,
    make_global_quotient,
    stabilizer,
)
from .simplicial import OrderedComplex, SimplicialSet, fib_pi0, nerve_of_complex, product

__version__ = "0.1.0"
