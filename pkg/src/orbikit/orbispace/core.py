"""Orbispaces as maps p: P -> Q, with stabilizers, fiber certificates and local charts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..algebra.groups import FiniteGroup, GroupHom, describe_group, groups_isomorphic, subgroup
from ..algebra.homology import induced_iso_in_degree, reduced_homology
from ..algebra.linalg import FGAbelianGroup
from ..borel import BorelPresentation, borel_construction, induced_borel_map
from ..errors import (
    CheckFailed,
    Disconnected,
    InvalidAction,
    NoSuchVertex,
    NotEquivariant,
    TruncationError,
    UnresolvedPi1,
)
from ..fundamental import DEFAULT_MAX_COSETS, fundamental_group, induced_pi1_hom, universal_cover
from ..library import check_preserves_facets, check_vertex_action
from ..simplicial import (
    OrderedComplex,
    SimplicialAction,
    SimplicialSet,
    Simplex,
    SSetMap,
    SubResult,
    barycentric_subdivision,
    components,
    fib_pi0,
    inclusion_between,
    lift_vertex_perm_to_subdivision,
    nerve_action,
    nerve_of_complex,
    preimage,
    quotient_by_action,
    restrict_map,
    simplicial_fiber,
    star_neighborhood,
    sub_simplicial_set,
)


@dataclass(eq=False)
class Orbispace:
    """A map ``p: P -> Q``; global quotients also keep their ``(X, G, action)`` data."""

    P: SimplicialSet
    Q: SimplicialSet
    p: SSetMap
    N: int
    borel: BorelPresentation | None = None
    complex: OrderedComplex | None = None
    vertex_action: tuple[tuple[int, ...], ...] | None = None
    name: str = ""

    def __post_init__(self):
        hit = {img.cell for img in self.p.images[0]}
        if len(hit) != self.Q.count(0):
            raise InvalidAction("p must be surjective on vertices")

    @classmethod
    def explicit(cls, P: SimplicialSet, Q: SimplicialSet, p: SSetMap, name: str = "") -> "Orbispace":
        p.check()
        return cls(P, Q, p, min(P.N, Q.N), name=name)

    @property
    def is_global(self) -> bool:
        return self.borel is not None

    @property
    def valid_degree(self) -> int:
        return self.N - 1

    @property
    def group(self) -> FiniteGroup | None:
        return self.borel.G if self.borel else None

    def vertex(self, label) -> int:
        """Vertex of ``Q`` under a vertex label of the input complex."""
        if self.complex is None:
            raise NoSuchVertex("orbispace was not built from a complex; use vertex indices")
        i = self.complex.vertex_index(label)
        X = self.borel.X
        try:
            xv = X.index(0, ((i,),))
        except KeyError:
            raise NoSuchVertex(f"vertex {label!r} not in the nerve") from None
        return self.borel.underlying_quotient.projection.images[0][xv].cell

    def vertex_label(self, x: int):
        """Input-complex label of the orbit representative over ``x``, if it is an original vertex."""
        if self.complex is None:
            return x
        chain = self.borel.underlying.labels[0][x]
        s = chain[0]
        return self.complex.vertices[s[0]] if len(s) == 1 else tuple(self.complex.vertices[v] for v in s)

    def check_vertex(self, x: int) -> None:
        if not 0 <= x < self.Q.count(0):
            raise NoSuchVertex(f"vertex {x} not in the underlying space")


def global_quotient(X: SimplicialSet, G: FiniteGroup, act: SimplicialAction | None = None,
                    N: int | None = None, name: str = "") -> Orbispace:
    B = borel_construction(X, G, act, N)
    return Orbispace(B.borel_space, B.underlying, B.projection, B.N, borel=B, name=name)


def make_global_quotient(K: OrderedComplex, G: FiniteGroup, vertex_action: Sequence[Sequence[int]] | None = None,
                         N: int = 3, refine: int = 0, name: str = "") -> Orbispace:
    """``[X/G]`` for a vertex action on ``K`` (one permutation of vertex positions per element).

    The complex is refined ``refine`` times barycentrically, then imported
    through its face-poset nerve, on which any simplicial automorphism acts.
    """
    if vertex_action is None:
        vertex_action = [tuple(range(len(K.vertices))) for _ in range(G.order)]
    perms = [tuple(p) for p in vertex_action]
    check_vertex_action(G, perms)
    check_preserves_facets(K, perms)
    for _ in range(refine):
        S = barycentric_subdivision(K)
        perms = [tuple(lift_vertex_perm_to_subdivision(K, S, p)) for p in perms]
        K = S
    X = nerve_of_complex(K, N)
    act = nerve_action(K, X, G, perms)
    M = global_quotient(X, G, act, N, name=name or f"[{K.name}/{G.name}]")
    M.complex = K
    M.vertex_action = tuple(perms)
    return M


# --- stabilizers and fibers -----------------------------------------------------


def stabilizer_subgroup(M: Orbispace, x: int) -> tuple[FiniteGroup, GroupHom]:
    """Isotropy subgroup of the least representative over ``x``, with its inclusion."""
    M.check_vertex(x)
    rep = M.borel.orbit_representative(x)
    iso = M.borel.action.isotropy(0, rep)
    H, inc = subgroup(M.borel.G, iso)
    H = FiniteGroup(H.table, name=describe_group(H), elements=H.elements)
    return H, GroupHom(H, inc.target, inc.images)


def stabilizer(M: Orbispace, x: int, max_cosets: int = DEFAULT_MAX_COSETS) -> FiniteGroup:
    """``G_x``: isotropy for global quotients, π₁ of the fiber otherwise."""
    M.check_vertex(x)
    if M.is_global:
        return stabilizer_subgroup(M, x)[0]
    fib = simplicial_fiber(M.p, x).space
    res = fundamental_group(fib, 0, max_cosets, identify=True)
    if res.group is None:
        raise UnresolvedPi1(f"π₁ of the fiber over {x} is {res.order}")
    return res.group


@dataclass
class FiberCertificate:
    vertex: int
    stabilizer: str
    stabilizer_order: int
    pi1_order: int | str
    witness: tuple[int, ...] | None  # images of stabilizer elements in π₁(fiber)
    cover_reduced_homology: tuple[FGAbelianGroup, ...]
    degree: int
    fiber_counts: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.witness is not None and all(g.is_trivial for g in self.cover_reduced_homology)


def _check_degree(M: Orbispace, d: int | None) -> int:
    d = M.valid_degree if d is None else d
    if d > M.valid_degree:
        raise TruncationError(f"degree {d} is above the valid degree {M.valid_degree}")
    return d


def fiber_report(M: Orbispace, x: int, d: int | None = None, max_cosets: int = DEFAULT_MAX_COSETS) -> FiberCertificate:
    """Certify that ``p^{-1}(x)`` is a K(G_x, 1) through degree ``d``.

    π₁ of the fiber is computed by coset enumeration and matched to the
    stabilizer by an explicit isomorphism; the universal cover of the fiber
    must have vanishing reduced homology in degrees ``0..d``.
    """
    M.check_vertex(x)
    d = _check_degree(M, d)
    fib = simplicial_fiber(M.p, x).space
    if components(fib).count != 1:
        raise Disconnected(f"fiber over {x} is not connected")
    res = fundamental_group(fib, 0, max_cosets, identify=True)
    if res.group is None:
        raise UnresolvedPi1(f"π₁ of the fiber over {x} is {res.order}")
    G_x = stabilizer(M, x, max_cosets)
    ok, wit = groups_isomorphic(G_x, res.group)
    cover = universal_cover(fib, 0, max_cosets)
    red = tuple(reduced_homology(cover.cover, range(d + 1)))
    return FiberCertificate(
        x, describe_group(G_x), G_x.order, res.order,
        wit.images if ok else None, red, d, tuple(fib.counts()),
    )


# --- good neighborhoods -------------------------------------------------------


@dataclass
class NeighborhoodCertificate:
    vertex: int
    degree: int
    star_counts: tuple[int, ...]
    homology_iso: tuple[bool, ...]  # per degree 0..d
    pi1_iso: bool
    pi1_order: int | str

    @property
    def passed(self) -> bool:
        return all(self.homology_iso) and self.pi1_iso


@dataclass
class _Neighborhood:
    U: SubResult
    pre: SubResult
    fiber: SubResult


def _neighborhood(M: Orbispace, x: int) -> _Neighborhood:
    U = star_neighborhood(M.Q, x)
    pre = preimage(M.p, U.cells)
    fib = simplicial_fiber(M.p, x)
    return _Neighborhood(U, pre, fib)


def good_neighborhood_check(M: Orbispace, x: int, d: int | None = None,
                            max_cosets: int = DEFAULT_MAX_COSETS) -> NeighborhoodCertificate:
    """Fiber inclusion ``p^{-1}(x) -> p^{-1}(U)`` for ``U`` the closed star of ``x``.

    Certifies H_k isomorphisms for ``k <= d`` and a π₁ isomorphism; this is
    an equivalence verified through degree ``d`` only.
    """
    M.check_vertex(x)
    d = _check_degree(M, d)
    nb = _neighborhood(M, x)
    inc = inclusion_between(nb.fiber, nb.pre)
    h_iso = tuple(induced_iso_in_degree(inc, k) for k in range(d + 1))
    res = fundamental_group(nb.pre.space, inc.images[0][0].cell, max_cosets, identify=False)
    if res.finite:
        hom = induced_pi1_hom(inc, 0, max_cosets)
        pi1_ok = hom.is_bijective()
    else:
        pi1_ok = False
    return NeighborhoodCertificate(x, d, tuple(nb.U.space.counts()), h_iso, pi1_ok, res.order)


# --- charts ----------------------------------------------------------------------


@dataclass(eq=False)
class ChartReport:
    vertex: int
    U: SimplicialSet
    chart: SimplicialSet  # Û
    stabilizer: FiniteGroup
    action: SimplicialAction  # G_x acting on Û
    projection: SSetMap  # Û -> U
    quotient_iso: bool  # Û/G_x -> U is a cell isomorphism
    chart_reduced_homology: tuple[FGAbelianGroup, ...]
    degree: int
    neighborhood: NeighborhoodCertificate
    lift_counts: tuple[int, ...] = ()  # cells of the component of q^{-1}(U) in X (global case)
    notes: list[str] = field(default_factory=list)

    @property
    def acyclic(self) -> bool:
        return all(g.is_trivial for g in self.chart_reduced_homology)

    @property
    def passed(self) -> bool:
        return self.quotient_iso and self.acyclic and self.neighborhood.passed


def _descend_action(G: FiniteGroup, cover_perms, quot: SSetMap, Z: SimplicialSet) -> SimplicialAction:
    """Action on a quotient ``Z`` of the cover, induced by the deck action."""
    perms = []
    for g in range(G.order):
        pg = [[None] * Z.count(n) for n in range(Z.N + 1)]
        for n in range(quot.source.N + 1):
            for k in range(quot.source.count(n)):
                a = quot.images[n][k]
                b = quot.images[n][cover_perms[g][n][k]]
                if a.eta != b.eta:
                    raise CheckFailed("deck action does not descend to the chart")
                m = a.base_dim
                cur = pg[m][a.cell]
                if cur is None:
                    pg[m][a.cell] = b.cell
                elif cur != b.cell:
                    raise CheckFailed("deck action does not descend to the chart")
        if any(v is None for level in pg for v in level):
            raise CheckFailed("chart cells not reached by the cover")
        perms.append(pg)
    return SimplicialAction(G, Z, perms)


def extract_chart(M: Orbispace, x: int, d: int | None = None,
                  max_cosets: int = DEFAULT_MAX_COSETS) -> ChartReport:
    """Local chart ``Û = fib-π₀(cover of p^{-1}(U) -> U)`` with the descended deck action.

    Certifies that ``Û/G_x -> U`` is a cell isomorphism and that ``Û`` is
    acyclic through degree ``d``.
    """
    M.check_vertex(x)
    d = _check_degree(M, d)
    good = good_neighborhood_check(M, x, d, max_cosets)
    if not good.passed:
        raise CheckFailed(f"closed star of {x} is not a good neighborhood through degree {d}")
    nb = _neighborhood(M, x)
    cov = universal_cover(nb.pre.space, 0, max_cosets)
    to_U = restrict_map(M.p, nb.pre, nb.U) @ cov.projection
    fp = fib_pi0(to_U)
    deck_action = _descend_action(cov.deck_group, cov.deck_action.perms, fp.quotient, fp.space)
    G_x = stabilizer(M, x, max_cosets)
    ok, wit = groups_isomorphic(G_x, cov.deck_group)
    if not ok:
        raise CheckFailed(f"deck group is not isomorphic to the stabilizer: {wit}")
    action = SimplicialAction(G_x, fp.space, [deck_action.perms[wit(g)] for g in range(G_x.order)])
    q = quotient_by_action(fp.space, action)
    down = SSetMap(
        q.space, nb.U.space,
        [[fp.projection.images[n][c] for c in reps] for n, reps in enumerate(q.representative)],
    )
    down.check()
    iso = down.is_cell_isomorphism()
    red = tuple(reduced_homology(fp.space, range(d + 1)))
    lift = _global_lift_counts(M, x, nb.U) if M.is_global else ()
    notes = ["G_x acts through a chosen isomorphism with the deck group of p^-1(U)"]
    if lift and lift != tuple(fp.space.counts()):
        notes.append("chart cell counts differ from the lifted star in X")
    return ChartReport(x, nb.U.space, fp.space, G_x, action, fp.projection, iso, red, d, good,
                       lift, notes)


def _global_lift_counts(M: Orbispace, x: int, U: SubResult) -> tuple[int, ...]:
    """Cell counts of the component of ``q^{-1}(U)`` in X containing the representative."""
    B = M.borel
    pre = preimage(B.underlying_quotient.projection, U.cells)
    comp = components(pre.space)
    rep = B.orbit_representative(x)
    rep_local = pre.cells[0].index(rep)
    root = comp.representative[rep_local]
    seeds = []
    for n, cs in enumerate(pre.cells):
        for i, c in enumerate(cs):
            v = pre.space.vertices(n, i)[0]
            if comp.representative[v] == root:
                seeds.append((n, c))
    return tuple(sub_simplicial_set(B.X, seeds).space.counts())


# --- localized maps ------------------------------------------------------------


@dataclass(eq=False)
class LocalizedMap:
    vertex: int
    target_vertex: int
    sigma_x: GroupHom  # G_x -> H_{Qf(x)}
    chart_map: SSetMap  # star of the representative in X -> star of the target representative in Y
    source_chart: SubResult
    target_chart: SubResult
    translation: int  # h with r(x̄) = h·ȳ

    def is_identity(self) -> bool:
        return self.sigma_x.is_identity()


def localize_map(r: SSetMap, sigma: GroupHom, source: Orbispace, target: Orbispace, x: int) -> LocalizedMap:
    """Restrict ``[r/σ]`` near ``x`` to stabilizers and stars of representatives.

    With ``r(x̄) = h·ȳ`` for the representatives ``x̄``, ``ȳ``, the stabilizer
    map is ``g ↦ h^{-1} σ(g) h`` and the chart map is ``c ↦ h^{-1}·r(c)``;
    its equivariance along that homomorphism is checked on every cell.
    """
    if not (source.is_global and target.is_global):
        raise NotEquivariant("localize_map needs global quotients")
    source.check_vertex(x)
    Bs, Bt = source.borel, target.borel
    _, Qf = induced_borel_map(r, sigma, Bs, Bt)
    y = Qf.images[0][x].cell
    xr = Bs.orbit_representative(x)
    yr = Bt.orbit_representative(y)
    H = Bt.G
    rx = r.images[0][xr].cell
    h = next(g for g in range(H.order) if Bt.action.perms[g][0][yr] == rx)
    hinv = H.inv(h)
    Gx, inc_x = stabilizer_subgroup(source, x)
    Hy, inc_y = stabilizer_subgroup(target, y)
    pos_y = {e: i for i, e in enumerate(inc_y.images)}
    images = []
    for a in range(Gx.order):
        v = H.mul(H.mul(hinv, sigma(inc_x(a))), h)
        if v not in pos_y:
            raise NotEquivariant("σ does not map the stabilizer into the target stabilizer")
        images.append(pos_y[v])
    sigma_x = GroupHom(Gx, Hy, tuple(images))
    if not sigma_x.is_homomorphism():
        raise NotEquivariant("restricted σ is not a homomorphism")
    S = star_neighborhood(Bs.X, xr)
    T = star_neighborhood(Bt.X, yr)
    translated = SSetMap(
        r.source, r.target,
        [[Bt.action.apply(hinv, img) for img in level] for level in r.images],
    )
    f_hat = restrict_map(translated, S, T)
    f_hat.check()
    s_pos = [{c: i for i, c in enumerate(cs)} for cs in S.cells]
    t_pos = [{c: i for i, c in enumerate(cs)} for cs in T.cells]
    for a in range(Gx.order):
        g, hh = inc_x(a), inc_y(sigma_x(a))
        for n, cs in enumerate(S.cells):
            for i, c in enumerate(cs):
                gc = s_pos[n][Bs.action.perms[g][n][c]]
                lhs = f_hat.images[n][gc]
                img = f_hat.images[n][i]
                tc = T.cells[img.base_dim][img.cell]
                rhs = Simplex(img.eta, t_pos[img.base_dim][Bt.action.perms[hh][img.base_dim][tc]])
                if lhs != rhs:
                    raise NotEquivariant(f"chart map not σ_x-equivariant on cell {c} (dim {n})")
    return LocalizedMap(x, y, sigma_x, f_hat, S, T, h)


def constant_map(X: SimplicialSet, Y: SimplicialSet, y: int) -> SSetMap:
    return SSetMap(X, Y, [[Simplex((0,) * (n + 1), y) for _ in range(X.count(n))] for n in range(X.N + 1)])

