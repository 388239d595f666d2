"""Finite groups as multiplication tables, homomorphisms, and small searches."""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Sequence

from ..errors import InvalidTable, OrderBoundExceeded

ASSOCIATIVITY_EXHAUSTIVE_MAX = 64
ISOMORPHISM_ORDER_BOUND = 128


@dataclass(frozen=True)
class FiniteGroup:
    """Group on elements ``0..m-1`` with identity ``0``.

    ``table[a][b]`` is the product ``a * b``.
    """

    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)
    elements: tuple = field(default=(), compare=False)  # optional display labels

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        m = len(table)
        if m == 0:
            raise InvalidTable("a group needs at least one element")
        rng = set(range(m))
        for row in table:
            if len(row) != m or set(row) != rng:
                raise InvalidTable("table is not a Latin square")
        for a in range(m):
            if table[0][a] != a or table[a][0] != a:
                raise InvalidTable("element 0 must be the identity")
        triples = (
            product(range(m), repeat=3)
            if m <= ASSOCIATIVITY_EXHAUSTIVE_MAX
            else (_rand_triple(m, s) for s in range(20000))
        )
        for a, b, c in triples:
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InvalidTable(f"not associative at ({a}, {b}, {c})")
        inv = [0] * m
        for a in range(m):
            inv[a] = table[a].index(0)
        object.__setattr__(self, "_inv", tuple(inv))

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, a: int) -> int:
        """``g a g^-1``."""
        return self.table[self.table[g][a]][self._inv[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        out = 0
        for _ in range(k):
            out = self.table[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def label(self, a: int) -> str:
        return str(self.elements[a]) if self.elements else str(a)

    def generated_by(self, gens: Sequence[int]) -> list[int]:
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def small_generating_set(self) -> list[int]:
        gens: list[int] = []
        span = {0}
        for a in sorted(range(self.order), key=lambda a: (-self.element_order(a), a)):
            if a not in span:
                gens.append(a)
                span = set(self.generated_by(gens))
            if len(span) == self.order:
                break
        return gens


def _rand_triple(m: int, seed: int):
    r = random.Random(seed)
    return r.randrange(m), r.randrange(m), r.randrange(m)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidTable("cyclic group order must be >= 1")
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                       name=f"Z/{n}" if n > 1 else "1")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``range(n)`` in lexicographic order; ``(p*q)(i) = p(q(i))``."""
    if n < 1:
        raise InvalidTable("symmetric group degree must be >= 1")
    perms = list(permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(pos[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    return FiniteGroup(table, name=f"S{n}", elements=tuple(perms))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    m = H.order
    table = tuple(
        tuple(G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(G.order * m))
        for a in range(G.order * m)
    )
    return FiniteGroup(table, name=f"{G.name}x{H.name}")


def group_from_table(table) -> FiniteGroup:
    return FiniteGroup(tuple(tuple(r) for r in table), name="table")


def make_group(kind: str, n: int | None = None, table=None) -> FiniteGroup:
    """``make_group('cyclic', 3)``, ``make_group('symmetric', 3)`` or ``make_group('table', table=...)``."""
    if kind == "cyclic":
        return cyclic_group(n)
    if kind == "symmetric":
        return symmetric_group(n)
    if kind == "table":
        return group_from_table(table)
    raise ValueError(f"unknown group kind {kind!r}")


def permutation_group(perms: Sequence[Sequence[int]], name: str = "") -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Group generated by permutations; returns the group and its element permutations.

    Element 0 is the identity; the rest are in order of discovery (BFS).
    """
    degree = len(perms[0]) if perms else 0
    ident = tuple(range(degree))
    elems = [ident]
    pos = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in perms:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in pos:
                pos[y] = len(elems)
                elems.append(y)
                queue.append(y)
    table = [[pos[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems]
    return FiniteGroup(tuple(map(tuple, table)), name=name, elements=tuple(elems)), elems


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.order:
            raise ValueError("one image per source element is required")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def is_homomorphism(self) -> bool:
        S, T, f = self.source, self.target, self.images
        if f[0] != 0:
            return False
        return all(
            f[S.mul(a, b)] == T.mul(f[a], f[b]) for a in range(S.order) for b in range(S.order)
        )

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.source.order == self.target.order

    def compose(self, first: "GroupHom") -> "GroupHom":
        return GroupHom(first.source, self.target, tuple(self.images[x] for x in first.images))

    def is_trivial(self) -> bool:
        return all(x == 0 for x in self.images)

    def is_identity(self) -> bool:
        return self.source == self.target and self.images == tuple(range(self.source.order))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


def subgroup(G: FiniteGroup, elements: Sequence[int], name: str = "") -> tuple[FiniteGroup, GroupHom]:
    """Subgroup on the given elements (sorted, identity first) and its inclusion."""
    elems = sorted(set(elements))
    if not elems or elems[0] != 0:
        raise InvalidTable("a subgroup must contain the identity")
    pos = {e: i for i, e in enumerate(elems)}
    try:
        table = tuple(tuple(pos[G.mul(a, b)] for b in elems) for a in elems)
    except KeyError:
        raise InvalidTable("elements are not closed under multiplication") from None
    labels = tuple(G.label(e) for e in elems)
    H = FiniteGroup(table, name=name or describe_group_name(len(elems)), elements=labels)
    return H, GroupHom(H, G, tuple(elems))


def describe_group_name(order: int) -> str:
    return "1" if order == 1 else f"order {order}"


def is_cyclic(G: FiniteGroup) -> bool:
    return any(G.element_order(a) == G.order for a in range(G.order))


def describe_group(G: FiniteGroup) -> str:
    """Short structural name used in reports."""
    if G.order == 1:
        return "1"
    if is_cyclic(G):
        return f"ℤ/{G.order}"
    if G.name and not G.name.startswith("order"):
        return G.name
    return f"group of order {G.order}"


# --- homomorphism classification ----------------------------------------------


def _eval_word(G: FiniteGroup, word: Sequence[int], images: Sequence[int]) -> int:
    x = 0
    for letter in word:
        g = images[abs(letter) - 1]
        x = G.mul(x, g if letter > 0 else G.inv(g))
    return x


def enumerate_homs(ngens: int, relators: Sequence[Sequence[int]], G: FiniteGroup) -> list[tuple[int, ...]]:
    """All generator assignments in ``G`` satisfying every relator (backtracking).

    Words use letters ``±(i + 1)`` for generator ``i``.
    """
    by_last: list[list[Sequence[int]]] = [[] for _ in range(ngens)]
    for r in relators:
        if not r:
            continue
        top = max(abs(x) for x in r) - 1
        by_last[top].append(r)
    # relators over no generator only matter if nonempty; they were skipped above
    out = []
    images = [0] * ngens

    def assign(i):
        if i == ngens:
            out.append(tuple(images))
            return
        for g in range(G.order):
            images[i] = g
            if all(_eval_word(G, r, images) == 0 for r in by_last[i]):
                assign(i + 1)
        images[i] = 0

    assign(0)
    return out


def classify_homs(presentation, G: FiniteGroup) -> list[tuple[int, ...]]:
    """Hom(P, G) modulo simultaneous conjugation.

    Each class is represented by its lexicographically least image tuple;
    the list is sorted.
    """
    homs = enumerate_homs(presentation.ngens, presentation.relators, G)
    reps = set()
    for h in homs:
        reps.add(min(tuple(G.conj(g, x) for x in h) for g in range(G.order)))
    return sorted(reps)


# --- isomorphism -------------------------------------------------------------


def order_profile(G: FiniteGroup) -> tuple:
    return tuple(sorted(Counter(G.element_order(a) for a in range(G.order)).items()))


def groups_isomorphic(G: FiniteGroup, H: FiniteGroup, bound: int = ISOMORPHISM_ORDER_BOUND):
    """Decide ``G ≅ H``; returns ``(True, GroupHom)`` or ``(False, reason)``."""
    if max(G.order, H.order) > bound:
        raise OrderBoundExceeded(f"isomorphism search limited to order {bound}")
    if G.order != H.order:
        return False, "orders differ"
    if order_profile(G) != order_profile(H):
        return False, "element orders differ"
    if G.is_abelian() != H.is_abelian():
        return False, "commutativity differs"
    gens = G.small_generating_set()
    # BFS words: element -> (parent element, generator position)
    parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
    order_seen = [0]
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for j, g in enumerate(gens):
            y = G.mul(x, g)
            if y not in parent:
                parent[y] = (x, j)
                order_seen.append(y)
                queue.append(y)
    candidates = [
        [h for h in range(H.order) if H.element_order(h) == G.element_order(g)] for g in gens
    ]
    for choice in product(*candidates):
        phi = [None] * G.order
        phi[0] = 0
        for y in order_seen[1:]:
            x, j = parent[y]
            phi[y] = H.mul(phi[x], choice[j])
        if len(set(phi)) != G.order:
            continue
        if all(phi[G.mul(x, g)] == H.mul(phi[x], choice[j])
               for x in range(G.order) for j, g in enumerate(gens)):
            return True, GroupHom(G, H, tuple(phi))
    return False, "no generator assignment extends to an isomorphism"
