"""Edge-path presentations of π₁, Tietze simplification, coset enumeration, universal covers.

Words are tuples of nonzero ints: letter ``i + 1`` is generator ``i`` and
``-(i + 1)`` its inverse.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .algebra.groups import FiniteGroup, GroupHom
from .algebra.linalg import FGAbelianGroup, IntMatrix, group_from_divisors, smith_normal_form
from .errors import (
    BoundExceeded,
    Disconnected,
    InfiniteOrUnresolvedPi1,
    NoSuchVertex,
    TruncationTooLow,
)
from .simplicial import (
    SimplicialAction,
    SimplicialSet,
    Simplex,
    SSetMap,
    build_simplicial_set,
    components,
    identity_eta,
)

DEFAULT_MAX_COSETS = 10_000
IDENTIFY_ORDER_LIMIT = 128
ORDER_EXCEEDED = "exceeded bound"
ORDER_INFINITE = "infinite (certified by free abelian quotient)"

Word = tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def _letter_key(word: Sequence[int]):
    return [(abs(x), x < 0) for x in word]


def canonical_relator(word: Sequence[int]) -> Word:
    """Least cyclic rotation of the word or its inverse."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    best = None
    for cand in (w, invert(w)):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            if best is None or _letter_key(rot) < _letter_key(best):
                best = rot
    return best


def _letter_name(x: int, ngens: int) -> str:
    g = abs(x) - 1
    if ngens <= 26:
        s = chr(ord("a") + g)
        return s if x > 0 else s.upper()
    return f"x{g}" if x > 0 else f"x{g}^-1"


@dataclass(frozen=True)
class GroupPresentation:
    ngens: int
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        for r in rels:
            for x in r:
                if x == 0 or abs(x) > self.ngens:
                    raise ValueError(f"letter {x} out of range for {self.ngens} generators")

    @classmethod
    def parse(cls, ngens: int, relators: Sequence[str]) -> "GroupPresentation":
        """Relators as strings over ``a..z``; uppercase letters are inverses."""
        words = []
        for r in relators:
            w = []
            for ch in r.replace(" ", ""):
                g = ord(ch.lower()) - ord("a")
                w.append(g + 1 if ch.islower() else -(g + 1))
            words.append(tuple(w))
        return cls(ngens, tuple(words))

    def word_str(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        sep = "" if self.ngens <= 26 else "*"
        return sep.join(_letter_name(x, self.ngens) for x in w)

    def __str__(self):
        gens = ", ".join(_letter_name(i + 1, self.ngens) for i in range(self.ngens))
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"⟨{gens} | {rels}⟩"

    def relation_matrix(self) -> IntMatrix:
        rows = []
        for r in self.relators:
            row = [0] * self.ngens
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return IntMatrix(rows, self.ngens)

    def abelianization(self) -> FGAbelianGroup:
        if not self.relators:
            return FGAbelianGroup(self.ngens)
        return group_from_divisors(self.ngens, smith_normal_form(self.relation_matrix()).divisors)


# --- edge-path group ----------------------------------------------------------


@dataclass(frozen=True)
class EdgePathData:
    presentation: GroupPresentation
    base: int
    edge_generator: tuple[int | None, ...]  # per nondegenerate edge; None on tree edges

    def edge_word(self, s: Simplex) -> Word:
        """Word of a 1-simplex (empty for degenerate and tree edges)."""
        if s.degenerate:
            return ()
        g = self.edge_generator[s.cell]
        return () if g is None else (g + 1,)


def edge_path_data(X: SimplicialSet, base: int = 0) -> EdgePathData:
    """BFS spanning tree (lexicographic neighbours); generators = non-tree edges."""
    if X.N < 2:
        raise TruncationTooLow("π₁ needs cells through dimension 2")
    if not 0 <= base < X.count(0):
        raise NoSuchVertex(f"base vertex {base} not in {X.name}")
    if components(X).count != 1:
        raise Disconnected(f"{X.name or 'space'} is not connected; no base point is chosen implicitly")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(X.count(0))]
    for e, fs in enumerate(X.faces[1]):
        src, dst = fs[1].cell, fs[0].cell
        if src != dst:
            adj[src].append((dst, e))
            adj[dst].append((src, e))
    for lst in adj:
        lst.sort()
    seen = {base}
    tree = set()
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for w, e in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                queue.append(w)
    edge_gen: list[int | None] = []
    ngens = 0
    for e in range(X.count(1)):
        if e in tree:
            edge_gen.append(None)
        else:
            edge_gen.append(ngens)
            ngens += 1
    data = EdgePathData(GroupPresentation(ngens), base, tuple(edge_gen))
    rels = []
    for fs in X.faces[2]:
        w = data.edge_word(fs[2]) + data.edge_word(fs[0]) + invert(data.edge_word(fs[1]))
        w = free_reduce(w)
        if w:
            rels.append(w)
    return EdgePathData(GroupPresentation(ngens, tuple(rels)), base, tuple(edge_gen))


def pi1_presentation(X: SimplicialSet, base: int = 0) -> GroupPresentation:
    return edge_path_data(X, base).presentation


# --- Tietze --------------------------------------------------------------------


class TietzeResult(NamedTuple):
    presentation: GroupPresentation
    exhausted: bool
    substitutions: tuple[Word, ...]  # original generator -> word in the new generators


def _substitute(word: Sequence[int], letter: int, expr: Word) -> Word:
    out: list[int] = []
    inv = invert(expr)
    for x in word:
        if x == letter:
            out.extend(expr)
        elif x == -letter:
            out.extend(inv)
        else:
            out.append(x)
    return free_reduce(out)


def _normalize_relators(rels) -> list[Word]:
    canon = {canonical_relator(r) for r in rels}
    canon.discard(())
    return sorted(canon, key=lambda r: (len(r), _letter_key(r)))


def tietze_simplify(P: GroupPresentation, budget: int = 10_000) -> TietzeResult:
    """Eliminate generators occurring once in a relator, reduce and dedupe relators.

    The shortest eligible relator is used, eliminating its highest-numbered
    once-occurring generator. Stops at a fixpoint or after ``budget``
    eliminations (``exhausted`` is then set).
    """
    alive = list(range(P.ngens))
    subs: dict[int, Word] = {g: (g + 1,) for g in range(P.ngens)}
    rels = _normalize_relators(P.relators)
    steps = 0
    exhausted = False
    while True:
        choice = None
        for idx, r in enumerate(rels):
            counts = Counter(abs(x) for x in r)
            once = [g for g, c in counts.items() if c == 1]
            if once:
                choice = (idx, max(once))
                break
        if choice is None:
            break
        if steps >= budget:
            exhausted = True
            break
        idx, letter = choice
        r = rels[idx]
        k = next(i for i, x in enumerate(r) if abs(x) == letter)
        rot = r[k:] + r[:k]
        rest = rot[1:]
        expr = invert(rest) if rot[0] > 0 else rest
        others = rels[:idx] + rels[idx + 1:]
        rels = _normalize_relators(_substitute(w, letter, expr) for w in others)
        subs = {g: _substitute(v, letter, expr) for g, v in subs.items()}
        alive.remove(letter - 1)
        steps += 1
    new_letter = {g + 1: i + 1 for i, g in enumerate(alive)}

    def rename(w):
        return tuple(new_letter[x] if x > 0 else -new_letter[-x] for x in w)

    new_rels = tuple(_normalize_relators(rename(r) for r in rels))
    return TietzeResult(
        GroupPresentation(len(alive), new_rels),
        exhausted,
        tuple(rename(subs[g]) for g in range(P.ngens)),
    )


# --- Todd-Coxeter ----------------------------------------------------------------


class CosetTable(NamedTuple):
    order: int
    action: tuple[tuple[int, ...], ...]  # action[c][g] = coset c·g


def coset_enumerate(P: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """HLT coset enumeration over the trivial subgroup.

    Raises :class:`BoundExceeded` once more than ``max_cosets`` cosets
    have been defined.
    """
    ncols = 2 * P.ngens

    def col(x):
        return 2 * (abs(x) - 1) + (0 if x > 0 else 1)

    rels = [[col(x) for x in r] for r in P.relators if r]
    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        if len(table) >= max_cosets:
            raise BoundExceeded(f"coset enumeration exceeded {max_cosets} cosets")
        d = len(table)
        table.append([None] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            parent[b] = a
            queue.append(b)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(alpha, w):
        f, b = alpha, alpha
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    alpha = 0
    while alpha < len(table):
        if parent[alpha] == alpha:
            for w in rels:
                scan_and_fill(alpha, w)
                if parent[alpha] != alpha:
                    break
            if parent[alpha] == alpha:
                for x in range(ncols):
                    if table[alpha][x] is None:
                        define(alpha, x)
        alpha += 1
    live = [c for c in range(len(table)) if parent[c] == c]
    pos = {c: i for i, c in enumerate(live)}
    action = []
    for c in live:
        row = []
        for g in range(P.ngens):
            d = table[c][2 * g]
            if d is None:
                raise AssertionError("incomplete coset table after enumeration")
            row.append(pos[rep(d)])
        action.append(tuple(row))
    return CosetTable(len(live), tuple(action))


def group_from_cosets(ct: CosetTable) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Group on cosets of the trivial subgroup and the images of the generators.

    Coset ``k`` is the element reached from ``0`` along a BFS word ``w_k``;
    ``k * m`` is ``k`` moved along ``w_m``.
    """
    n = ct.order
    ngens = len(ct.action[0]) if n else 0
    words: list[list[int] | None] = [None] * n
    words[0] = []
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in range(ngens):
            d = ct.action[c][g]
            if words[d] is None:
                words[d] = words[c] + [g]
                queue.append(d)
    table = []
    for k in range(n):
        row = []
        for m in range(n):
            c = k
            for g in words[m]:
                c = ct.action[c][g]
            row.append(c)
        table.append(tuple(row))
    G = FiniteGroup(tuple(table), name="π₁")
    return G, tuple(ct.action[0][g] for g in range(ngens))


def evaluate_word(G: FiniteGroup, word: Sequence[int], images: Sequence[int]) -> int:
    x = 0
    for letter in word:
        g = images[abs(letter) - 1]
        x = G.mul(x, g if letter > 0 else G.inv(g))
    return x


def verify_presentation_witness(P: GroupPresentation, G: FiniteGroup, images: Sequence[int]) -> bool:
    """Relators hold and images generate ``G``: a surjection from the presented group."""
    if any(evaluate_word(G, r, images) != 0 for r in P.relators):
        return False
    return len(G.generated_by(list(images))) == G.order


# --- π₁ reports --------------------------------------------------------------------


@dataclass(frozen=True)
class Pi1Result:
    presentation: GroupPresentation
    simplified: GroupPresentation
    abelianization: FGAbelianGroup
    order: int | str
    group: FiniteGroup | None = None
    generator_images: tuple[int, ...] | None = None  # witness: images of presentation generators

    @property
    def finite(self) -> bool:
        return isinstance(self.order, int)

    def describe(self) -> str:
        if self.order == 1:
            return "0"
        if self.abelianization.order == self.order:
            return str(self.abelianization)
        return f"order {self.order}" if self.finite else str(self.order)


def _finite_pi1(P: GroupPresentation, max_cosets: int):
    """Return (group, images of P's generators, simplified presentation) or raise."""
    simp = tietze_simplify(P)
    if simp.presentation.abelianization().rank > 0:
        raise InfiniteOrUnresolvedPi1(ORDER_INFINITE)
    try:
        ct = coset_enumerate(simp.presentation, max_cosets)
    except BoundExceeded as exc:
        raise InfiniteOrUnresolvedPi1(str(exc)) from None
    G, gen_images = group_from_cosets(ct)
    images = tuple(evaluate_word(G, w, gen_images) for w in simp.substitutions)
    return G, images, simp.presentation


def fundamental_group(X: SimplicialSet, base: int = 0, max_cosets: int = DEFAULT_MAX_COSETS,
                      identify: bool | None = None) -> Pi1Result:
    """Presentation, abelianization and (when decidable here) order of π₁(X, base).

    ``identify=None`` attaches the finite group only when its order is at
    most 128; ``True`` always does, ``False`` never.
    """
    P = pi1_presentation(X, base)
    simp = tietze_simplify(P)
    ab = simp.presentation.abelianization()
    if ab.rank > 0:
        return Pi1Result(P, simp.presentation, ab, ORDER_INFINITE)
    try:
        ct = coset_enumerate(simp.presentation, max_cosets)
    except BoundExceeded:
        return Pi1Result(P, simp.presentation, ab, ORDER_EXCEEDED)
    if identify is False or (identify is None and ct.order > IDENTIFY_ORDER_LIMIT):
        return Pi1Result(P, simp.presentation, ab, ct.order)
    G, gen_images = group_from_cosets(ct)
    images = tuple(evaluate_word(G, w, gen_images) for w in simp.substitutions)
    if not verify_presentation_witness(P, G, images):
        raise AssertionError("coset-table witness failed verification")
    return Pi1Result(P, simp.presentation, ab, ct.order, G, images)


# --- universal covers -----------------------------------------------------------


@dataclass(frozen=True)
class CoverResult:
    cover: SimplicialSet
    projection: SSetMap
    deck_group: FiniteGroup
    deck_action: SimplicialAction
    base: int
    edge_element: tuple[int, ...]  # π₁ element carried by each base edge


def universal_cover(X: SimplicialSet, base: int = 0, max_cosets: int = DEFAULT_MAX_COSETS,
                    verify: bool = True) -> CoverResult:
    """Universal cover of a connected ``X`` with finite π₁.

    Cells are pairs ``(cell, sheet)`` with sheets indexed by group elements.
    The face d_0 moves the initial vertex along the 01-edge, so the sheet
    is multiplied on the right by that edge's element; other faces keep it.
    Deck transformations multiply sheets on the left.
    """
    data = edge_path_data(X, base)
    G, images, _ = _finite_pi1(data.presentation, max_cosets)
    edge_elem = []
    for e in range(X.count(1)):
        g = data.edge_generator[e]
        edge_elem.append(0 if g is None else images[g])

    def first_edge_element(n, c):
        s = X.cell(n, c)
        while s.dim > 1:
            s = X.face(s, s.dim)
        return 0 if s.degenerate else edge_elem[s.cell]

    first = [[0] * X.count(0)] + [
        [first_edge_element(n, c) for c in range(X.count(n))] for n in range(1, X.N + 1)
    ]
    m = G.order
    levels = [[(c, k) for c in range(X.count(n)) for k in range(m)] for n in range(X.N + 1)]

    def face(n, key, i):
        c, k = key
        f = X.face_of_cell(n, c, i)
        sheet = G.mul(k, first[n][c]) if i == 0 else k
        return f.eta, (f.cell, sheet)

    C = build_simplicial_set(levels, face, name=f"cover({X.name})")
    proj = SSetMap(C, X, [[Simplex(identity_eta(n), lab[0]) for lab in level]
                          for n, level in enumerate(C.labels)])
    perms = [
        [[C.index(n, (c, G.mul(h, k))) for c, k in C.labels[n]] for n in range(C.N + 1)]
        for h in range(m)
    ]
    deck = SimplicialAction(G, C, perms, check=verify)
    result = CoverResult(C, proj, G, deck, base, tuple(edge_elem))
    if verify:
        C.check()
        proj.check()
        cover_pi1 = fundamental_group(C, C.index(0, (base, 0)), max_cosets, identify=False)
        if cover_pi1.order != 1:
            raise AssertionError(f"cover is not simply connected (π₁ order {cover_pi1.order})")
    return result


def induced_pi1_hom(f: SSetMap, source_base: int = 0, max_cosets: int = DEFAULT_MAX_COSETS) -> GroupHom:
    """Homomorphism π₁(source, b) -> π₁(target, f(b)) between finite fundamental groups."""
    src_data = edge_path_data(f.source, source_base)
    tgt_base = f.images[0][source_base].cell
    tgt_data = edge_path_data(f.target, tgt_base)
    Gs, src_imgs, _ = _finite_pi1(src_data.presentation, max_cosets)
    Gt, tgt_imgs, _ = _finite_pi1(tgt_data.presentation, max_cosets)
    tgt_edge = [0 if g is None else tgt_imgs[g] for g in tgt_data.edge_generator]

    # image of the source tree path from the base to each vertex, as a target element
    src_tree_elem = _tree_elements(f.source, src_data, lambda e: _image_edge_element(f, e, tgt_edge, Gt), Gt)
    gen_images = []
    for e, g in enumerate(src_data.edge_generator):
        if g is None:
            continue
        v_src, v_dst = f.source.faces[1][e][1].cell, f.source.faces[1][e][0].cell
        x = Gt.mul(Gt.mul(src_tree_elem[v_src], _image_edge_element(f, e, tgt_edge, Gt)),
                   Gt.inv(src_tree_elem[v_dst]))
        gen_images.append((g, x))
    images = [0] * Gs.order
    gen_elem = dict(gen_images)
    gens_s = [(src_imgs[g], gen_elem[g]) for g in range(src_data.presentation.ngens)]
    seen = {0: 0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for s_elem, t_elem in gens_s:
            b = Gs.mul(a, s_elem)
            if b not in seen:
                seen[b] = Gt.mul(seen[a], t_elem)
                queue.append(b)
    for a, b in seen.items():
        images[a] = b
    hom = GroupHom(Gs, Gt, tuple(images))
    if not hom.is_homomorphism():
        raise AssertionError("induced map on π₁ is not a homomorphism")
    return hom


def _image_edge_element(f: SSetMap, e: int, tgt_edge: Sequence[int], Gt: FiniteGroup) -> int:
    img = f.images[1][e]
    return 0 if img.degenerate else tgt_edge[img.cell]


def _tree_elements(X: SimplicialSet, data: EdgePathData, edge_value, G: FiniteGroup) -> list[int]:
    """Target element of the tree path from the base to every vertex."""
    out = [None] * X.count(0)
    out[data.base] = 0
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(X.count(0))]
    for e, fs in enumerate(X.faces[1]):
        if data.edge_generator[e] is None:
            a, b = fs[1].cell, fs[0].cell
            adj[a].append((b, e, 1))
            adj[b].append((a, e, -1))
    queue = deque([data.base])
    while queue:
        v = queue.popleft()
        for w, e, sign in adj[v]:
            if out[w] is None:
                val = edge_value(e)
                out[w] = G.mul(out[v], val if sign > 0 else G.inv(val))
                queue.append(w)
    return out
