"""Builtin complexes and helpers for vertex actions."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Mapping, Sequence

from .algebra.groups import FiniteGroup
from .errors import ActionNotSimplicial, InvalidAction
from .simplicial import OrderedComplex


def point_complex() -> OrderedComplex:
    return OrderedComplex((0,), ((0,),), name="point")


def path_complex(length: int, start: int = 0) -> OrderedComplex:
    """Vertices ``start..start+length`` joined consecutively."""
    if length < 0:
        raise ValueError("path length must be >= 0")
    if length == 0:
        return OrderedComplex((start,), ((0,),), name="path0")
    verts = tuple(range(start, start + length + 1))
    return OrderedComplex(verts, tuple((i, i + 1) for i in range(length)), name=f"path{length}")


def simplex_boundary(n: int) -> OrderedComplex:
    """Boundary of the n-simplex, an (n-1)-sphere (n >= 1)."""
    if n < 1:
        raise ValueError("simplex_boundary needs n >= 1")
    facets = tuple(f for f in combinations(range(n + 1), n))
    return OrderedComplex(tuple(range(n + 1)), facets, name=f"bd_simplex{n}")


def simplex_complex(n: int) -> OrderedComplex:
    return OrderedComplex(tuple(range(n + 1)), (tuple(range(n + 1)),), name=f"simplex{n}")


def octahedron() -> OrderedComplex:
    """Octahedral 2-sphere on vertices 0..5; ``v`` and ``v+3`` are antipodal."""
    facets = [(a, b, c) for a in (0, 3) for b in (1, 4) for c in (2, 5)]
    return OrderedComplex.from_facets(facets, name="octahedron")


def antipodal_permutation() -> list[int]:
    return [(v + 3) % 6 for v in range(6)]


def builtin_complex(kind: str, **params) -> OrderedComplex:
    if kind == "point":
        return point_complex()
    if kind == "path":
        return path_complex(int(params.get("length", params.get("k", 1))), int(params.get("start", 0)))
    if kind == "simplex_boundary":
        return simplex_boundary(int(params["n"]))
    if kind == "simplex":
        return simplex_complex(int(params["n"]))
    if kind == "octahedron":
        return octahedron()
    raise ValueError(f"unknown builtin complex {kind!r}")


# --- vertex actions ------------------------------------------------------------


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``p ∘ q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def extend_vertex_action(G: FiniteGroup, generators: Mapping[int, Sequence[int]], nverts: int) -> list[tuple[int, ...]]:
    """Extend permutations given on some elements to a homomorphism ``G -> Sym(vertices)``.

    Raises :class:`InvalidAction` if the elements given do not generate ``G``
    or the assignment is not a homomorphism.
    """
    ident = tuple(range(nverts))
    gens = {int(g): tuple(p) for g, p in generators.items()}
    for g, p in gens.items():
        if sorted(p) != list(ident):
            raise InvalidAction(f"image of element {g} is not a vertex permutation")
    perms: dict[int, tuple[int, ...]] = {0: ident}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, p in gens.items():
            y = G.mul(x, g)
            img = _compose(perms[x], p)
            if y not in perms:
                perms[y] = img
                queue.append(y)
            elif perms[y] != img:
                raise InvalidAction("vertex permutations do not define a homomorphism")
    if len(perms) != G.order:
        raise InvalidAction("given elements do not generate the group")
    full = [perms[g] for g in range(G.order)]
    check_vertex_action(G, full)
    return full


def check_vertex_action(G: FiniteGroup, perms: Sequence[Sequence[int]]) -> None:
    if len(perms) != G.order:
        raise InvalidAction("one vertex permutation per group element is required")
    n = len(perms[0])
    if tuple(perms[0]) != tuple(range(n)):
        raise InvalidAction("identity must fix every vertex")
    for g in range(G.order):
        for h in range(G.order):
            if tuple(perms[G.mul(g, h)]) != _compose(perms[g], perms[h]):
                raise InvalidAction("vertex permutations do not define a homomorphism")


def check_preserves_facets(K: OrderedComplex, perms: Sequence[Sequence[int]]) -> None:
    facets = {frozenset(f) for f in K.facets}
    for g, p in enumerate(perms):
        if len(p) != len(K.vertices):
            raise ActionNotSimplicial("permutation length differs from the vertex count")
        for f in K.facets:
            if frozenset(p[v] for v in f) not in facets:
                raise ActionNotSimplicial(f"element {g} does not map facet {f} to a facet")


def trivial_vertex_action(G: FiniteGroup, nverts: int) -> list[tuple[int, ...]]:
    return [tuple(range(nverts)) for _ in range(G.order)]
