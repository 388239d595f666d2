"""Finite-type truncated simplicial sets.

Every simplex is stored in normal form ``Simplex(eta, cell)``: ``cell`` is
the index of a nondegenerate cell of dimension ``m`` and ``eta`` is a
monotone surjection ``[n] -> [m]`` written as the tuple of its values.
The surjection is equivalent to the usual degeneracy word
``s_{i_k} ... s_{i_1}`` with ``i_k > ... > i_1``; the indices are exactly
the positions ``j`` with ``eta[j] == eta[j + 1]`` (see :attr:`Simplex.word`).
Degenerate simplices are never stored.

Cells of a :class:`SimplicialSet` carry a sortable label and are indexed,
per dimension, in increasing label order. Indices are the stable cell
identifiers used everywhere else (orbit and component representatives are
least indices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .errors import (
    EmptyInput,
    InvalidAction,
    InvalidComplex,
    NoSuchVertex,
    NotSimplicial,
)


class Simplex(NamedTuple):
    eta: tuple[int, ...]
    cell: int

    @property
    def dim(self) -> int:
        return len(self.eta) - 1

    @property
    def base_dim(self) -> int:
        return self.eta[-1]

    @property
    def degenerate(self) -> bool:
        return self.eta[-1] != len(self.eta) - 1

    @property
    def word(self) -> tuple[int, ...]:
        """Degeneracy indices, strictly decreasing."""
        eta = self.eta
        return tuple(j for j in range(len(eta) - 2, -1, -1) if eta[j] == eta[j + 1])


def identity_eta(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def eta_from_word(n: int, word: Sequence[int]) -> tuple[int, ...]:
    """Surjection of an ``n``-simplex from a degeneracy word."""
    dup = set(word)
    eta = [0]
    for j in range(n):
        eta.append(eta[-1] + (0 if j in dup else 1))
    return tuple(eta)


def compose_eta(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    return tuple(outer[k] for k in inner)


def collapse(seq: Sequence) -> tuple[tuple[int, ...], tuple]:
    """Split a sequence into (surjection, sequence without consecutive repeats)."""
    eta = []
    reduced = []
    for item in seq:
        if not reduced or reduced[-1] != item:
            reduced.append(item)
        eta.append(len(reduced) - 1)
    return tuple(eta), tuple(reduced)


class SimplicialSet:
    """A simplicial set truncated at dimension ``N``.

    ``labels[n]`` lists the nondegenerate ``n``-cells; ``faces[n][k]`` is the
    tuple of the ``n + 1`` faces of cell ``k`` as :class:`Simplex` values.
    """

    def __init__(self, labels, faces, name: str = ""):
        self.labels = tuple(tuple(level) for level in labels)
        self.faces = tuple(tuple(tuple(fs) for fs in level) for level in faces)
        self.name = name
        if len(self.faces) != len(self.labels):
            raise ValueError("labels and faces must cover the same dimensions")
        self._index = None
        self._vertex_cache: dict[tuple[int, int], tuple[int, ...]] = {}

    def __repr__(self):
        counts = ", ".join(str(c) for c in self.counts())
        return f"SimplicialSet({self.name or '?'}, N={self.N}, cells=[{counts}])"

    @property
    def N(self) -> int:
        return len(self.labels) - 1

    def count(self, n: int) -> int:
        return len(self.labels[n]) if 0 <= n <= self.N else 0

    def counts(self) -> list[int]:
        return [len(level) for level in self.labels]

    def index(self, n: int, label: Hashable) -> int:
        if self._index is None:
            self._index = [{lab: k for k, lab in enumerate(level)} for level in self.labels]
        return self._index[n][label]

    def has_label(self, n: int, label: Hashable) -> bool:
        try:
            self.index(n, label)
        except KeyError:
            return False
        return True

    def cell(self, n: int, k: int) -> Simplex:
        return Simplex(identity_eta(n), k)

    def face_of_cell(self, n: int, k: int, i: int) -> Simplex:
        return self.faces[n][k][i]

    def face(self, s: Simplex, i: int) -> Simplex:
        """The ``i``-th face of an arbitrary (possibly degenerate) simplex."""
        eta = s.eta
        n = len(eta) - 1
        if not 0 <= i <= n or n == 0:
            raise IndexError(f"face index {i} out of range for a {n}-simplex")
        rest = eta[:i] + eta[i + 1:]
        j = eta[i]
        if (i > 0 and eta[i - 1] == j) or (i < n and eta[i + 1] == j):
            return Simplex(rest, s.cell)
        # eta[i] is hit once: pass to the j-th face of the nondegenerate cell.
        inner = tuple(v if v < j else v - 1 for v in rest)
        f = self.faces[eta[-1]][s.cell][j]
        return Simplex(compose_eta(f.eta, inner), f.cell)

    def degeneracy(self, s: Simplex, i: int) -> Simplex:
        eta = s.eta
        return Simplex(eta[: i + 1] + eta[i:], s.cell)

    def vertices(self, n: int, k: int) -> tuple[int, ...]:
        """Vertex indices of a nondegenerate cell, in order."""
        if n == 0:
            return (k,)
        key = (n, k)
        got = self._vertex_cache.get(key)
        if got is None:
            last = self.faces[n][k][n]  # keeps vertices 0..n-1
            first = self.faces[n][k][0]  # keeps vertices 1..n
            head = self.simplex_vertices(last)
            tail = self.simplex_vertices(first)
            got = head + (tail[-1],)
            self._vertex_cache[key] = got
        return got

    def simplex_vertices(self, s: Simplex) -> tuple[int, ...]:
        verts = self.vertices(s.base_dim, s.cell)
        return tuple(verts[v] for v in s.eta)

    def check(self) -> None:
        """Verify d_i d_j = d_{j-1} d_i (i < j) on every cell; raise on failure."""
        for n in range(2, self.N + 1):
            for k in range(self.count(n)):
                c = self.cell(n, k)
                for j in range(n + 1):
                    dj = self.face(c, j)
                    for i in range(j):
                        if self.face(dj, i) != self.face(self.face(c, i), j - 1):
                            raise NotSimplicial(
                                f"simplicial identity d{i}d{j} fails on cell {k} of dim {n}"
                            )
        for n in range(1, self.N + 1):
            for k in range(self.count(n)):
                for i, f in enumerate(self.faces[n][k]):
                    if f.dim != n - 1 or not 0 <= f.cell < self.count(f.base_dim):
                        raise NotSimplicial(f"bad face {i} of cell {k} in dim {n}")

    def truncate(self, N: int) -> "SimplicialSet":
        if N >= self.N:
            return self
        return SimplicialSet(self.labels[: N + 1], self.faces[: N + 1], self.name)

    def euler_characteristic(self, upto: int | None = None) -> int:
        top = self.N if upto is None else upto
        return sum((-1) ** n * self.count(n) for n in range(top + 1))

    def cell_map(self, n: int) -> range:
        return range(self.count(n))


def build_simplicial_set(
    cells: Sequence[Iterable[Hashable]],
    face_fn: Callable[[int, Hashable, int], tuple[tuple[int, ...], Hashable]],
    name: str = "",
) -> SimplicialSet:
    """Assemble a simplicial set from nondegenerate cell keys.

    ``face_fn(n, key, i)`` returns ``(eta, target_key)`` for the ``i``-th face,
    with ``target_key`` naming a nondegenerate cell of dimension ``eta[-1]``.
    """
    labels = [sorted(set(level)) for level in cells]
    index = [{lab: k for k, lab in enumerate(level)} for level in labels]
    faces = [[() for _ in labels[0]]]
    for n in range(1, len(labels)):
        level = []
        for key in labels[n]:
            fs = []
            for i in range(n + 1):
                eta, target = face_fn(n, key, i)
                fs.append(Simplex(tuple(eta), index[eta[-1]][target]))
            level.append(tuple(fs))
        faces.append(level)
    return SimplicialSet(labels, faces, name)


class SSetMap:
    """Simplicial map given on nondegenerate cells."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, images, check: bool = False):
        self.source = source
        self.target = target
        self.images = tuple(tuple(level) for level in images)
        if check:
            self.check()

    def __call__(self, s: Simplex) -> Simplex:
        img = self.images[s.base_dim][s.cell]
        return Simplex(compose_eta(img.eta, s.eta), img.cell)

    def __eq__(self, other):
        if not isinstance(other, SSetMap):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.images == other.images
        )

    def __hash__(self):
        return hash(self.images)

    def same_cells(self, other: "SSetMap") -> bool:
        return self.images == other.images

    def check(self) -> None:
        src, tgt = self.source, self.target
        if len(self.images) != src.N + 1:
            raise NotSimplicial("map is not defined in every dimension of its source")
        for n in range(src.N + 1):
            if len(self.images[n]) != src.count(n):
                raise NotSimplicial(f"map is missing cells in dimension {n}")
            for k in range(src.count(n)):
                img = self.images[n][k]
                if img.dim != n:
                    raise NotSimplicial(f"cell {k} of dim {n} maps to a {img.dim}-simplex")
                if n == 0:
                    continue
                for i in range(n + 1):
                    if self(src.face_of_cell(n, k, i)) != tgt.face(img, i):
                        raise NotSimplicial(f"face {i} of cell {k} (dim {n}) not preserved")

    def compose(self, first: "SSetMap") -> "SSetMap":
        """``self ∘ first``."""
        images = [[self(s) for s in level] for level in first.images]
        return SSetMap(first.source, self.target, images)

    def __matmul__(self, first: "SSetMap") -> "SSetMap":
        return self.compose(first)

    def is_cell_isomorphism(self) -> bool:
        """True when nondegenerate cells correspond bijectively in every dimension."""
        if self.source.N != self.target.N:
            return False
        for n in range(self.source.N + 1):
            if self.source.count(n) != self.target.count(n):
                return False
            seen = set()
            for img in self.images[n]:
                if img.degenerate or img.cell in seen:
                    return False
                seen.add(img.cell)
        return True


def identity_map(X: SimplicialSet) -> SSetMap:
    return SSetMap(X, X, [[X.cell(n, k) for k in range(X.count(n))] for n in range(X.N + 1)])


# --- complexes -------------------------------------------------------------


@dataclass(frozen=True)
class OrderedComplex:
    """Finite simplicial complex on a totally ordered vertex set.

    ``facets`` hold vertex *indices* (positions in ``vertices``).
    """

    vertices: tuple
    facets: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.vertices:
            raise EmptyInput("complex has no vertices")
        used = set()
        for f in self.facets:
            if not f or any(a >= b for a, b in zip(f, f[1:])):
                raise InvalidComplex(f"facet {f} is not strictly sorted")
            if f[0] < 0 or f[-1] >= len(self.vertices):
                raise InvalidComplex(f"facet {f} references a missing vertex")
            used.update(f)
        sets = [frozenset(f) for f in self.facets]
        for a, b in combinations(range(len(sets)), 2):
            if sets[a] <= sets[b] or sets[b] <= sets[a]:
                raise InvalidComplex(f"facet {self.facets[a]} and {self.facets[b]} are nested")
        if len(used) != len(self.vertices):
            raise InvalidComplex("every vertex must lie in some facet")

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], name: str = "") -> "OrderedComplex":
        """Build from facets given by vertex labels; non-maximal facets are dropped."""
        raw = [tuple(sorted(set(f))) for f in facets]
        if not raw:
            raise EmptyInput("complex has no facets")
        verts = sorted({v for f in raw for v in f})
        pos = {v: i for i, v in enumerate(verts)}
        sets = sorted({frozenset(pos[v] for v in f) for f in raw}, key=lambda s: sorted(s))
        maximal = [s for s in sets if not any(s < t for t in sets)]
        facets_idx = tuple(sorted(tuple(sorted(s)) for s in maximal))
        return cls(tuple(verts), facets_idx, name)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def simplices(self) -> list[tuple[int, ...]]:
        out = set()
        for f in self.facets:
            for r in range(1, len(f) + 1):
                out.update(combinations(f, r))
        return sorted(out, key=lambda s: (len(s), s))

    def vertex_index(self, label) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise NoSuchVertex(f"no vertex {label!r} in complex") from None


def _strict_chains(simplices: list[tuple[int, ...]], top: int) -> list[list[tuple]]:
    sets = {s: frozenset(s) for s in simplices}
    bigger = {s: [t for t in simplices if len(t) > len(s) and sets[s] < sets[t]] for s in simplices}
    levels: list[list[tuple]] = [[(s,) for s in simplices]]
    for n in range(1, top + 1):
        nxt = []
        for chain in levels[-1]:
            for t in bigger[chain[-1]]:
                nxt.append(chain + (t,))
        levels.append(nxt)
    return levels


def nerve_of_complex(K: OrderedComplex, N: int) -> SimplicialSet:
    """Nerve of the face poset of ``K`` (its barycentric subdivision), truncated at ``N``.

    Cell labels are strictly increasing chains of simplices of ``K``; each
    simplex is a tuple of vertex indices.
    """
    if not K.facets:
        raise EmptyInput("empty complex")
    levels = _strict_chains(K.simplices(), N)

    def face(n, chain, i):
        return identity_eta(n - 1), chain[:i] + chain[i + 1:]

    return build_simplicial_set(levels, face, name=f"nerve({K.name})" if K.name else "nerve")


def ordered_simplicial_set(K: OrderedComplex, N: int) -> SimplicialSet:
    """``K`` as a simplicial set using its vertex order (no subdivision)."""
    simp = K.simplices()
    levels = [[s for s in simp if len(s) == n + 1] for n in range(N + 1)]

    def face(n, s, i):
        return identity_eta(n - 1), s[:i] + s[i + 1:]

    return build_simplicial_set(levels, face, name=K.name)


def barycentric_subdivision(K: OrderedComplex) -> OrderedComplex:
    """The complex whose vertices are simplices of ``K`` (as label tuples) and facets maximal chains."""
    simp = K.simplices()
    sets = {s: frozenset(s) for s in simp}
    maximal_chains = []

    def extend(chain):
        last = chain[-1]
        ups = [t for t in simp if len(t) == len(last) + 1 and sets[last] < sets[t]]
        if not ups:
            maximal_chains.append(chain)
        for t in ups:
            extend(chain + [t])

    for s in simp:
        if len(s) == 1:
            extend([s])
    label = lambda s: tuple(K.vertices[v] for v in s)
    return OrderedComplex.from_facets(
        [[label(s) for s in ch] for ch in maximal_chains], name=f"sd({K.name})"
    )


def lift_vertex_perm_to_subdivision(K: OrderedComplex, S: OrderedComplex, perm: Sequence[int]) -> list[int]:
    """Vertex permutation of ``barycentric_subdivision(K)`` induced by one of ``K``."""
    pos = {v: i for i, v in enumerate(K.vertices)}
    out = []
    for lab in S.vertices:
        img = tuple(sorted(K.vertices[perm[pos[v]]] for v in lab))
        out.append(S.vertex_index(img))
    return out


# --- builtin simplicial sets -----------------------------------------------


def point(N: int = 2) -> SimplicialSet:
    return SimplicialSet([[0]] + [[] for _ in range(N)], [[()]] + [[] for _ in range(N)], "point")


def minimal_circle(N: int = 2) -> SimplicialSet:
    """One vertex and one nondegenerate loop."""
    labels = [[0], [1]] + [[] for _ in range(N - 1)]
    faces = [[()], [(Simplex((0,), 0), Simplex((0,), 0))]] + [[] for _ in range(N - 1)]
    return SimplicialSet(labels[: N + 1], faces[: N + 1], "circle")


def standard_simplex(n: int, N: int | None = None) -> SimplicialSet:
    N = n if N is None else N
    levels = [list(combinations(range(n + 1), d + 1)) for d in range(N + 1)]

    def face(d, s, i):
        return identity_eta(d - 1), s[:i] + s[i + 1:]

    return build_simplicial_set(levels, face, name=f"Delta{n}")


def disjoint_union(A: SimplicialSet, B: SimplicialSet) -> SimplicialSet:
    N = min(A.N, B.N)
    labels, faces = [], []
    for n in range(N + 1):
        labels.append([(0, lab) for lab in A.labels[n]] + [(1, lab) for lab in B.labels[n]])
        lvl = list(A.faces[n])
        for fs in B.faces[n]:
            lvl.append(tuple(Simplex(f.eta, f.cell + A.count(f.base_dim)) for f in fs))
        faces.append(lvl)
    return SimplicialSet(labels, faces, f"{A.name}+{B.name}")


# --- products --------------------------------------------------------------


def _joint_surjections(m: int, p: int, q: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs of surjections [m]->[p], [m]->[q] whose joint map is injective."""
    out = []

    def walk(a, b, ea, eb):
        if len(ea) == m + 1:
            if a == p and b == q:
                out.append((tuple(ea), tuple(eb)))
            return
        for da, db in ((1, 0), (0, 1), (1, 1)):
            na, nb = a + da, b + db
            if na <= p and nb <= q:
                walk(na, nb, ea + [na], eb + [nb])

    walk(0, 0, [0], [0])
    return out


def pair_normalize(sa: Simplex, sb: Simplex):
    """Normal form of the pair (sa, sb) as a cell key of the product."""
    eta, pairs = collapse(list(zip(sa.eta, sb.eta)))
    ea = tuple(a for a, _ in pairs)
    eb = tuple(b for _, b in pairs)
    return eta, (sa.cell, sb.cell, ea, eb)


class ProductResult(NamedTuple):
    space: SimplicialSet
    first: SSetMap
    second: SSetMap


def product(A: SimplicialSet, B: SimplicialSet) -> ProductResult:
    """Levelwise product with Eilenberg-Zilber normal-form cells ``(a, b, eta_a, eta_b)``."""
    N = min(A.N, B.N)
    levels = []
    for m in range(N + 1):
        keys = []
        for p in range(min(m, N) + 1):
            for q in range(max(0, m - p), m + 1):
                if not A.count(p) or not B.count(q):
                    continue
                for ea, eb in _joint_surjections(m, p, q):
                    for x in range(A.count(p)):
                        for y in range(B.count(q)):
                            keys.append((x, y, ea, eb))
        levels.append(keys)

    def face(m, key, i):
        x, y, ea, eb = key
        return pair_normalize(A.face(Simplex(ea, x), i), B.face(Simplex(eb, y), i))

    P = build_simplicial_set(levels, face, name=f"{A.name}x{B.name}")
    pa = SSetMap(P, A, [[Simplex(lab[2], lab[0]) for lab in level] for level in P.labels])
    pb = SSetMap(P, B, [[Simplex(lab[3], lab[1]) for lab in level] for level in P.labels])
    return ProductResult(P, pa, pb)


def product_map(f: SSetMap, g: SSetMap, source: SimplicialSet, target: SimplicialSet) -> SSetMap:
    """``f x g`` between two products built by :func:`product`."""
    images = []
    for m, level in enumerate(source.labels):
        row = []
        for x, y, ea, eb in level:
            eta, key = pair_normalize(f(Simplex(ea, x)), g(Simplex(eb, y)))
            row.append(Simplex(eta, target.index(eta[-1], key)))
        images.append(row)
    return SSetMap(source, target, images)


# --- actions and quotients --------------------------------------------------


class SimplicialAction:
    """Left action of a finite group by cell permutations.

    ``perms[g][n][k]`` is the index of ``g`` applied to ``n``-cell ``k``.
    """

    def __init__(self, group, space: SimplicialSet, perms, check: bool = True):
        self.group = group
        self.space = space
        self.perms = tuple(tuple(tuple(level) for level in pg) for pg in perms)
        if check:
            self.check()

    def apply(self, g: int, s: Simplex) -> Simplex:
        return Simplex(s.eta, self.perms[g][s.base_dim][s.cell])

    def check(self) -> None:
        X, G = self.space, self.group
        if len(self.perms) != G.order:
            raise InvalidAction("one permutation per group element is required")
        for g in range(G.order):
            for n in range(X.N + 1):
                if sorted(self.perms[g][n]) != list(range(X.count(n))):
                    raise InvalidAction(f"element {g} does not permute the {n}-cells")
        for n in range(X.N + 1):
            if list(self.perms[0][n]) != list(range(X.count(n))):
                raise InvalidAction("identity must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                for n in range(X.N + 1):
                    pg, ph, pgh = self.perms[g][n], self.perms[h][n], self.perms[gh][n]
                    if any(pg[ph[k]] != pgh[k] for k in range(X.count(n))):
                        raise InvalidAction("action does not respect the multiplication table")
        for g in range(G.order):
            for n in range(1, X.N + 1):
                for k in range(X.count(n)):
                    gk = self.perms[g][n][k]
                    for i in range(n + 1):
                        if X.face_of_cell(n, gk, i) != self.apply(g, X.face_of_cell(n, k, i)):
                            raise InvalidAction(f"element {g} does not commute with face {i}")

    def is_free(self) -> bool:
        for g in range(1, self.group.order):
            for n in range(self.space.N + 1):
                if any(self.perms[g][n][k] == k for k in range(self.space.count(n))):
                    return False
        return True

    def orbit(self, n: int, k: int) -> list[int]:
        return sorted({self.perms[g][n][k] for g in range(self.group.order)})

    def isotropy(self, n: int, k: int) -> list[int]:
        return [g for g in range(self.group.order) if self.perms[g][n][k] == k]


def trivial_action(group, X: SimplicialSet) -> SimplicialAction:
    ident = [list(range(X.count(n))) for n in range(X.N + 1)]
    return SimplicialAction(group, X, [ident for _ in range(group.order)], check=False)


class QuotientResult(NamedTuple):
    space: SimplicialSet
    projection: SSetMap
    representative: tuple[tuple[int, ...], ...]  # per dim: least cell of each orbit


def quotient_by_action(X: SimplicialSet, action: SimplicialAction, check: bool = False) -> QuotientResult:
    """Levelwise orbit simplicial set; orbit of cell ``k`` is named by its least member."""
    if check:
        action.check()
    if action.space is not X and action.space.counts() != X.counts():
        raise InvalidAction("action is defined on a different space")
    G = action.group
    rep = []
    reps_sorted = []
    for n in range(X.N + 1):
        r = [min(action.perms[g][n][k] for g in range(G.order)) for k in range(X.count(n))]
        rep.append(r)
        reps_sorted.append(sorted(set(r)))
    qindex = [{c: i for i, c in enumerate(reps)} for reps in reps_sorted]
    labels = [[X.labels[n][c] for c in reps_sorted[n]] for n in range(X.N + 1)]
    faces = [[() for _ in reps_sorted[0]]]
    for n in range(1, X.N + 1):
        level = []
        for c in reps_sorted[n]:
            fs = []
            for f in X.faces[n][c]:
                m = f.base_dim
                fs.append(Simplex(f.eta, qindex[m][rep[m][f.cell]]))
            level.append(tuple(fs))
        faces.append(level)
    Q = SimplicialSet(labels, faces, f"{X.name}/{G.name}" if X.name else "quotient")
    proj = SSetMap(
        X, Q,
        [[Simplex(identity_eta(n), qindex[n][rep[n][k]]) for k in range(X.count(n))] for n in range(X.N + 1)],
    )
    return QuotientResult(Q, proj, tuple(tuple(r) for r in reps_sorted))


def induced_quotient_map(F: SSetMap, source_q: QuotientResult, target_q: QuotientResult) -> SSetMap:
    """Map of quotients induced by an equivariant ``F`` (evaluated on representatives)."""
    images = []
    for n, reps in enumerate(source_q.representative):
        images.append([target_q.projection(F.images[n][c]) for c in reps])
    return SSetMap(source_q.space, target_q.space, images)


def induced_vertex_action(X: SimplicialSet, n_perm: Callable[[int, Hashable], Hashable], group) -> SimplicialAction:
    """Action on ``X`` from a label-level rule ``n_perm(g, label) -> label``."""
    perms = []
    for g in range(group.order):
        pg = []
        for n in range(X.N + 1):
            try:
                pg.append([X.index(n, n_perm(g, lab)) for lab in X.labels[n]])
            except KeyError as exc:
                raise InvalidAction(f"image of a {n}-cell is not a cell: {exc}") from None
        perms.append(pg)
    return SimplicialAction(group, X, perms)


def nerve_action(K: OrderedComplex, X: SimplicialSet, group, vertex_perms: Sequence[Sequence[int]]) -> SimplicialAction:
    """Action on ``nerve_of_complex(K)`` induced by vertex permutations (one per element)."""
    def act(g, chain):
        perm = vertex_perms[g]
        return tuple(tuple(sorted(perm[v] for v in s)) for s in chain)

    return induced_vertex_action(X, act, group)


def nerve_map(K: OrderedComplex, L: OrderedComplex, vertex_map: Sequence[int],
              X: SimplicialSet, Y: SimplicialSet) -> SSetMap:
    """Map of nerves induced by a simplicial vertex map ``K -> L``."""
    images = []
    for n, level in enumerate(X.labels):
        row = []
        for chain in level:
            imgs = [tuple(sorted(set(vertex_map[v] for v in s))) for s in chain]
            eta, red = collapse(imgs)
            try:
                row.append(Simplex(eta, Y.index(eta[-1], red)))
            except KeyError:
                raise NotSimplicial(f"vertex map does not send {chain} to a simplex") from None
        images.append(row)
    return SSetMap(X, Y, images)


# --- connectivity, fibers, neighborhoods --------------------------------------


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class Components(NamedTuple):
    representative: tuple[int, ...]  # least vertex of each vertex's component
    count: int


def components(X: SimplicialSet) -> Components:
    uf = _UnionFind(X.count(0))
    if X.N >= 1:
        for fs in X.faces[1]:
            uf.union(fs[0].cell, fs[1].cell)
    # union keeps the least index as root
    rep = tuple(uf.find(v) for v in range(X.count(0)))
    return Components(rep, len(set(rep)))


class SubResult(NamedTuple):
    space: SimplicialSet
    inclusion: SSetMap
    cells: tuple[tuple[int, ...], ...]  # per dim: source indices of kept cells


def sub_simplicial_set(X: SimplicialSet, seeds: Iterable[tuple[int, int]], name: str = "") -> SubResult:
    """Smallest sub-simplicial set containing the seed cells ``(n, k)``."""
    keep = [set() for _ in range(X.N + 1)]
    stack = list(seeds)
    while stack:
        n, k = stack.pop()
        if k in keep[n]:
            continue
        keep[n].add(k)
        if n > 0:
            for f in X.faces[n][k]:
                if f.cell not in keep[f.base_dim]:
                    stack.append((f.base_dim, f.cell))
    cells = [sorted(s) for s in keep]
    pos = [{c: i for i, c in enumerate(cs)} for cs in cells]
    labels = [[X.labels[n][c] for c in cells[n]] for n in range(X.N + 1)]
    faces = [[() for _ in cells[0]]]
    for n in range(1, X.N + 1):
        faces.append([
            tuple(Simplex(f.eta, pos[f.base_dim][f.cell]) for f in X.faces[n][c]) for c in cells[n]
        ])
    S = SimplicialSet(labels, faces, name or f"sub({X.name})")
    inc = SSetMap(S, X, [[Simplex(identity_eta(n), c) for c in cells[n]] for n in range(X.N + 1)])
    return SubResult(S, inc, tuple(tuple(c) for c in cells))


def star_neighborhood(X: SimplicialSet, x: int) -> SubResult:
    """Closed star of vertex ``x``: every cell having ``x`` as a vertex, with all faces."""
    if not 0 <= x < X.count(0):
        raise NoSuchVertex(f"vertex {x} not in {X.name}")
    seeds = [(n, k) for n in range(X.N + 1) for k in range(X.count(n)) if x in X.vertices(n, k)]
    return sub_simplicial_set(X, seeds, name=f"star({x})")


def preimage(q: SSetMap, target_cells: Sequence[Iterable[int]]) -> SubResult:
    """Cells of ``q.source`` whose image lies over the given target cells (per dim)."""
    allowed = [set(c) for c in target_cells]
    src = q.source
    seeds = []
    for n in range(src.N + 1):
        for k, img in enumerate(q.images[n]):
            if img.cell in allowed[img.base_dim]:
                seeds.append((n, k))
    return sub_simplicial_set(src, seeds, name=f"preimage({src.name})")


def simplicial_fiber(q: SSetMap, b: int) -> SubResult:
    """Cells whose image is a totally degenerate simplex on vertex ``b``."""
    if not 0 <= b < q.target.count(0):
        raise NoSuchVertex(f"vertex {b} not in target")
    seeds = []
    for n in range(q.source.N + 1):
        for k, img in enumerate(q.images[n]):
            if img.base_dim == 0 and img.cell == b:
                seeds.append((n, k))
    return sub_simplicial_set(q.source, seeds, name=f"fiber({b})")


def restrict_map(q: SSetMap, source: SubResult, target: SubResult) -> SSetMap:
    """Restriction of ``q`` to sub-objects (``q(source) ⊆ target`` required)."""
    pos = [{c: i for i, c in enumerate(cs)} for cs in target.cells]
    images = []
    for n, cs in enumerate(source.cells):
        row = []
        for c in cs:
            img = q.images[n][c]
            try:
                row.append(Simplex(img.eta, pos[img.base_dim][img.cell]))
            except KeyError:
                raise NotSimplicial("image leaves the target sub-object") from None
        images.append(row)
    return SSetMap(source.space, target.space, images)


def inclusion_between(small: SubResult, big: SubResult) -> SSetMap:
    """Inclusion of one sub-object of a common ambient into a larger one."""
    pos = [{c: i for i, c in enumerate(cs)} for cs in big.cells]
    images = [
        [Simplex(identity_eta(n), pos[n][c]) for c in cs] for n, cs in enumerate(small.cells)
    ]
    return SSetMap(small.space, big.space, images)


# --- fib-pi0 -----------------------------------------------------------------


class FibPi0Result(NamedTuple):
    space: SimplicialSet
    projection: SSetMap  # to q.target
    quotient: SSetMap  # from q.source


def fib_pi0(q: SSetMap) -> FibPi0Result:
    """Identify simplices with equal image whose vertices share fiber components.

    Vertices are joined when an edge between them maps to a degenerate edge.
    A class is recorded by its key ``(image cell, image eta, vertex classes)``;
    this embeds the quotient in ``target x (coskeleton of vertex classes)``,
    which determines faces and degeneracy. The surrogate is exact when
    fiber components are generated by vertex fibers, as for product and
    Borel projections.
    """
    A, T = q.source, q.target
    uf = _UnionFind(A.count(0))
    if A.N >= 1:
        for k, img in enumerate(q.images[1]):
            if img.degenerate:
                fs = A.faces[1][k]
                uf.union(fs[0].cell, fs[1].cell)
    vclass = [uf.find(v) for v in range(A.count(0))]

    def normalize(s: Simplex, vc: Sequence[int]):
        eta, red = collapse(list(zip(s.eta, vc)))
        return eta, (s.cell, tuple(a for a, _ in red), tuple(b for _, b in red))

    levels = [set() for _ in range(A.N + 1)]
    cell_key = []
    for n in range(A.N + 1):
        row = []
        for k in range(A.count(n)):
            vc = [vclass[v] for v in A.vertices(n, k)]
            eta, key = normalize(q.images[n][k], vc)
            row.append((eta, key))
            levels[eta[-1]].add(key)
        cell_key.append(row)

    def face(n, key, i):
        c, eta, vc = key
        t = T.face(Simplex(eta, c), i)
        return normalize(t, vc[:i] + vc[i + 1:])

    Z = build_simplicial_set(levels, face, name=f"fibpi0({A.name})")
    proj = SSetMap(Z, T, [[Simplex(lab[1], lab[0]) for lab in level] for level in Z.labels])
    quot = SSetMap(
        A, Z,
        [[Simplex(eta, Z.index(eta[-1], key)) for eta, key in row] for row in cell_key],
    )
    return FibPi0Result(Z, proj, quot)
