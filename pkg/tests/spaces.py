"""Connected test spaces with known π₁, shared by several test modules."""

from orbikit.algebra import cyclic_group, symmetric_group
from orbikit.borel import classifying_space
from orbikit.library import antipodal_permutation, octahedron, path_complex, simplex_boundary
from orbikit.simplicial import (
    OrderedComplex,
    minimal_circle,
    nerve_action,
    nerve_of_complex,
    point,
    product,
    quotient_by_action,
)


def projective_plane(N=3):
    K = octahedron()
    X = nerve_of_complex(K, N)
    act = nerve_action(K, X, cyclic_group(2), [tuple(range(6)), tuple(antipodal_permutation())])
    return quotient_by_action(X, act).space


def torus(N=3):
    C = minimal_circle(N)
    return product(C, C).space


def triangle(N=3):
    return nerve_of_complex(OrderedComplex.from_facets([[0, 1], [1, 2], [0, 2]]), N)


def spaces():
    """(name, space, order of π₁ or None if infinite, H_1 as text)."""
    return [
        ("point", point(3), 1, "0"),
        ("path", nerve_of_complex(path_complex(3), 3), 1, "0"),
        ("circle", minimal_circle(3), None, "ℤ"),
        ("triangle", triangle(), None, "ℤ"),
        ("sphere", nerve_of_complex(simplex_boundary(3), 3), 1, "0"),
        ("octahedron", nerve_of_complex(octahedron(), 3), 1, "0"),
        ("projective plane", projective_plane(), 2, "ℤ/2"),
        ("torus", torus(), None, "ℤ^2"),
        ("BZ/2", classifying_space(cyclic_group(2), 3), 2, "ℤ/2"),
        ("BZ/3", classifying_space(cyclic_group(3), 3), 3, "ℤ/3"),
        ("BS3", classifying_space(symmetric_group(3), 3), 6, "ℤ/2"),
        ("circle x BZ/2", product(minimal_circle(3), classifying_space(cyclic_group(2), 3)).space, None, "ℤ ⊕ ℤ/2"),
    ]
