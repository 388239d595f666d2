"""Bar models of EG and BG, Borel constructions (X x EG)/G and the maps between them."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.groups import FiniteGroup, GroupHom
from .algebra.homology import cohomology, homology
from .algebra.linalg import FGAbelianGroup
from .errors import InvalidAction, NotEquivariant, NotSimplicial, TruncationMismatch
from .simplicial import (
    ProductResult,
    QuotientResult,
    SimplicialAction,
    SimplicialSet,
    Simplex,
    SSetMap,
    build_simplicial_set,
    collapse,
    induced_quotient_map,
    product,
    product_map,
    quotient_by_action,
    trivial_action,
)


def _bar_cells(m: int, n: int):
    """(n+1)-tuples over range(m) with no two consecutive entries equal, lexicographic."""
    out = []
    for first in range(m):
        stack = [(first,)]
        while stack:
            t = stack.pop()
            if len(t) == n + 1:
                out.append(t)
                continue
            for g in range(m - 1, -1, -1):
                if g != t[-1]:
                    stack.append(t + (g,))
    return sorted(out)


def bar_EG(G: FiniteGroup, N: int) -> tuple[SimplicialSet, SimplicialAction]:
    """Homogeneous bar construction: n-cells are tuples ``(g_0, ..., g_n)``.

    Faces delete an entry (collapsing repeats into a degeneracy); ``G``
    acts by left multiplication on every entry, freely.
    """
    if N < 1:
        raise ValueError("EG needs truncation N >= 1")
    m = G.order
    levels = [_bar_cells(m, n) for n in range(N + 1)]

    def face(n, t, i):
        return collapse(t[:i] + t[i + 1:])

    E = build_simplicial_set(levels, face, name=f"E{G.name or 'G'}")
    perms = [
        [[E.index(n, tuple(G.mul(g, a) for a in t)) for t in E.labels[n]] for n in range(N + 1)]
        for g in range(m)
    ]
    return E, SimplicialAction(G, E, perms, check=False)


def classifying_space(G: FiniteGroup, N: int) -> SimplicialSet:
    """``EG / G``; for ℤ/2 this has one nondegenerate cell per dimension."""
    E, act = bar_EG(G, N)
    B = quotient_by_action(E, act).space
    B.name = f"B{G.name or 'G'}"
    return B


def bar_map(sigma: GroupHom, source: SimplicialSet, target: SimplicialSet) -> SSetMap:
    """``Eσ``: apply σ entrywise to bar tuples."""
    images = []
    for n, level in enumerate(source.labels):
        row = []
        for t in level:
            eta, red = collapse(tuple(sigma(a) for a in t))
            row.append(Simplex(eta, target.index(eta[-1], red)))
        images.append(row)
    return SSetMap(source, target, images)


@dataclass(eq=False)
class BorelPresentation:
    """A global quotient ``p: (X x EG)/G -> X/G`` with all intermediate data."""

    X: SimplicialSet
    G: FiniteGroup
    action: SimplicialAction
    N: int
    EG: SimplicialSet
    EG_action: SimplicialAction
    product: ProductResult
    diagonal: SimplicialAction
    borel_quotient: QuotientResult  # (X x EG) -> (X x EG)/G
    underlying_quotient: QuotientResult  # X -> X/G
    projection: SSetMap  # borel_space -> underlying

    @property
    def borel_space(self) -> SimplicialSet:
        return self.borel_quotient.space

    @property
    def underlying(self) -> SimplicialSet:
        return self.underlying_quotient.space

    @property
    def valid_degree(self) -> int:
        return self.N - 1

    def orbit_representative(self, v: int) -> int:
        """Least vertex of ``X`` over vertex ``v`` of the underlying space."""
        return self.underlying_quotient.representative[0][v]


def diagonal_action(P: ProductResult, act: SimplicialAction, e_act: SimplicialAction) -> SimplicialAction:
    S = P.space
    G = act.group
    perms = []
    for g in range(G.order):
        pg = []
        for n, level in enumerate(S.labels):
            row = []
            for x, y, ea, eb in level:
                gx = act.perms[g][ea[-1]][x]
                gy = e_act.perms[g][eb[-1]][y]
                row.append(S.index(n, (gx, gy, ea, eb)))
            pg.append(row)
        perms.append(pg)
    return SimplicialAction(G, S, perms, check=False)


def borel_construction(X: SimplicialSet, G: FiniteGroup, act: SimplicialAction | None = None,
                       N: int | None = None, check: bool = True) -> BorelPresentation:
    """``(X x EG)/G`` with its projection to ``X/G``, both truncated at ``N``."""
    N = X.N if N is None else N
    if act is None:
        act = trivial_action(G, X)
    if act.group.order != G.order:
        raise InvalidAction("action group differs from G")
    if check:
        act.check()
    if N < X.N:
        X = X.truncate(N)
        act = SimplicialAction(G, X, [pg[: N + 1] for pg in act.perms], check=False)
    elif N > X.N:
        raise TruncationMismatch(f"X is truncated at {X.N} < {N}")
    E, e_act = bar_EG(G, N)
    P = product(X, E)
    diag = diagonal_action(P, act, e_act)
    if any(diag.perms[g][n][k] == k for g in range(1, G.order)
           for n in range(P.space.N + 1) for k in range(P.space.count(n))):
        raise AssertionError("diagonal action on X x EG is not free")
    bq = quotient_by_action(P.space, diag)
    uq = quotient_by_action(X, act)
    bq.space.name = f"Borel({X.name}, {G.name})"
    uq.space.name = f"{X.name}/{G.name}"
    first = P.first
    proj = induced_quotient_map(first, bq, uq)
    if check:
        proj.check()
    return BorelPresentation(X, G, act, N, E, e_act, P, diag, bq, uq, proj)


def check_equivariant(r: SSetMap, sigma: GroupHom, src_act: SimplicialAction, tgt_act: SimplicialAction) -> None:
    """``r(g·c) = σ(g)·r(c)`` on every nondegenerate cell."""
    X = r.source
    for g in range(sigma.source.order):
        h = sigma(g)
        for n in range(X.N + 1):
            for k in range(X.count(n)):
                lhs = r.images[n][src_act.perms[g][n][k]]
                rhs = tgt_act.apply(h, r.images[n][k])
                if lhs != rhs:
                    raise NotEquivariant(f"r(g·c) ≠ σ(g)·r(c) for g={g}, cell {k} in dim {n}")


def induced_borel_map(r: SSetMap, sigma: GroupHom, source: BorelPresentation,
                      target: BorelPresentation) -> tuple[SSetMap, SSetMap]:
    """``[r/σ]``: the pair ``(Pf, Qf)`` induced by ``r x Eσ`` on Borel and underlying spaces."""
    if source.N != target.N:
        raise TruncationMismatch(f"truncations differ: {source.N} vs {target.N}")
    if sigma.source.order != source.G.order or sigma.target.order != target.G.order:
        raise NotEquivariant("σ does not go between the acting groups")
    if not sigma.is_homomorphism():
        raise NotEquivariant("σ is not a homomorphism")
    r = _retruncate(r, source.X, target.X)
    check_equivariant(r, sigma, source.action, target.action)
    e_sigma = bar_map(sigma, source.EG, target.EG)
    rxe = product_map(r, e_sigma, source.product.space, target.product.space)
    Pf = induced_quotient_map(rxe, source.borel_quotient, target.borel_quotient)
    Qf = induced_quotient_map(r, source.underlying_quotient, target.underlying_quotient)
    if not (target.projection @ Pf).same_cells(Qf @ source.projection):
        raise NotSimplicial("orbispace square does not commute")
    return Pf, Qf


def _retruncate(r: SSetMap, X: SimplicialSet, Y: SimplicialSet) -> SSetMap:
    if r.source is X and r.target is Y:
        return r
    if r.source.counts()[: X.N + 1] != X.counts() or r.target.counts()[: Y.N + 1] != Y.counts():
        raise TruncationMismatch("map does not match the presented spaces")
    return SSetMap(X, Y, r.images[: X.N + 1])


@dataclass(frozen=True)
class GradedGroups:
    groups: tuple[FGAbelianGroup, ...]
    valid_degree: int
    coefficients: str = "integers"

    def __getitem__(self, n: int) -> FGAbelianGroup:
        return self.groups[n]

    def __len__(self):
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)


def _coeff_label(coefficients) -> str:
    if coefficients in (None, 0, "integers", "Z"):
        return "integers"
    return f"mod {str(coefficients).replace('mod', '').strip()}"


def equivariant_cohomology(X: SimplicialSet, G: FiniteGroup, act: SimplicialAction | None = None,
                           N: int | None = None, coefficients=None) -> GradedGroups:
    """``H^*_G(X) = H^*((X x EG)/G)`` in degrees ``0..N-1``."""
    B = borel_construction(X, G, act, N)
    groups = cohomology(B.borel_space, range(B.valid_degree + 1), coefficients, check=False)
    return GradedGroups(tuple(groups), B.valid_degree, _coeff_label(coefficients))


def equivariant_homology(X: SimplicialSet, G: FiniteGroup, act: SimplicialAction | None = None,
                         N: int | None = None, coefficients=None) -> GradedGroups:
    B = borel_construction(X, G, act, N)
    groups = homology(B.borel_space, range(B.valid_degree + 1), coefficients, check=False)
    return GradedGroups(tuple(groups), B.valid_degree, _coeff_label(coefficients))


def bar_cell_count(m: int, n: int) -> int:
    """Closed form ``m (m-1)^n`` for nondegenerate bar cells."""
    return m * (m - 1) ** n

