"""Deductions in exact sequences with partially known terms."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence, Union

from ..algebra.linalg import FGAbelianGroup
from ..errors import InconsistentSpec


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Known:
    group: FGAbelianGroup

    def __str__(self):
        return str(self.group)


@dataclass(frozen=True)
class FiniteTag:
    """A finite group known only by name and order (possibly nonabelian)."""

    name: str
    order: int

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Unknown:
    name: str

    def __str__(self):
        return f"?{self.name}"


Entry = Union[Zero, Known, FiniteTag, Unknown]


def parse_entry(text: str, index: int = 0) -> Entry:
    """``0``, an abelian group (``Z``, ``Z/2``, ``Z^2 + Z/3``), ``?name`` or ``tag:NAME:order``."""
    t = str(text).strip()
    if t.startswith("?"):
        return Unknown(t[1:] or f"x{index}")
    m = re.fullmatch(r"(?:unknown|Unknown)(?:\((\w*)\))?", t)
    if m:
        return Unknown(m.group(1) or f"x{index}")
    if t.startswith("tag:"):
        _, name, order = t.split(":")
        return _normalize(FiniteTag(name, int(order)))
    return _normalize(Known(FGAbelianGroup.parse(t)))


def _normalize(e: Entry) -> Entry:
    if isinstance(e, Known) and e.group.is_trivial:
        return Zero()
    if isinstance(e, FiniteTag) and e.order == 1:
        return Zero()
    return e


@dataclass(frozen=True)
class LESSpec:
    entries: tuple[Entry, ...]

    def __post_init__(self):
        if not self.entries:
            raise InconsistentSpec("an exact sequence needs at least one entry")
        object.__setattr__(self, "entries", tuple(_normalize(e) for e in self.entries))
        names = [e.name for e in self.entries if isinstance(e, Unknown)]
        if len(names) != len(set(names)):
            raise InconsistentSpec("unknown names must be distinct")

    @classmethod
    def parse(cls, items: Sequence[str]) -> "LESSpec":
        return cls(tuple(parse_entry(t, i) for i, t in enumerate(items)))

    def __str__(self):
        return " → ".join(str(e) for e in self.entries)


@dataclass
class LESResult:
    sequence: LESSpec
    resolved: dict[str, Entry] = field(default_factory=dict)
    constraints: dict[str, list[str]] = field(default_factory=dict)
    ambiguous: list[str] = field(default_factory=list)
    deductions: list[str] = field(default_factory=list)

    def value(self, name: str) -> Entry | None:
        return self.resolved.get(name)

    def entries(self) -> list[Entry]:
        return [self.resolved.get(e.name, e) if isinstance(e, Unknown) else e for e in self.sequence.entries]


def _as_abelian(e: Entry) -> FGAbelianGroup | None:
    if isinstance(e, Zero):
        return FGAbelianGroup(0)
    if isinstance(e, Known):
        return e.group
    return None


def _same(a: Entry, b: Entry) -> bool:
    if isinstance(a, Known) and isinstance(b, Known):
        return a.group == b.group
    if isinstance(a, FiniteTag) and isinstance(b, FiniteTag):
        return a.order == b.order and a.name == b.name
    if isinstance(a, FiniteTag) and isinstance(b, Known):
        return _tag_matches(a, b.group)
    if isinstance(b, FiniteTag) and isinstance(a, Known):
        return _tag_matches(b, a.group)
    return type(a) is type(b)


def _tag_matches(tag: FiniteTag, g: FGAbelianGroup) -> bool:
    """A tag equals an abelian group only if its name parses to that group."""
    try:
        return FGAbelianGroup.parse(tag.name) == g
    except ValueError:
        return False


def _prime_powers(g: FGAbelianGroup) -> dict[int, list[int]]:
    """Exponent partition of each Sylow subgroup (descending)."""
    out: dict[int, list[int]] = {}
    for d in g.torsion:
        n, p = d, 2
        while n > 1:
            if n % p == 0:
                k = 0
                while n % p == 0:
                    n //= p
                    k += 1
                out.setdefault(p, []).append(k)
            p += 1
    return {p: sorted(ks, reverse=True) for p, ks in out.items()}


def embeds(a: FGAbelianGroup, b: FGAbelianGroup) -> bool:
    """Whether finite torsion ``tors(a)`` is isomorphic to a subgroup of ``tors(b)``."""
    pa, pb = _prime_powers(a), _prime_powers(b)
    for p, ks in pa.items():
        ls = pb.get(p, [])
        if len(ks) > len(ls) or any(k > l for k, l in zip(ks, ls)):
            return False
    return True


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


def _cyclic(g: FGAbelianGroup) -> bool:
    return g.rank == 0 and len(g.torsion) <= 1


def _check_ses(a, b, c, where: str):
    """Necessary conditions for an exact 0 → a → b → c → 0 of f.g. abelian groups."""
    if b.rank != a.rank + c.rank:
        raise InconsistentSpec(f"{where}: ranks {a.rank} + {c.rank} ≠ {b.rank}")
    if not embeds(a, b):
        raise InconsistentSpec(f"{where}: torsion of {a} does not embed in {b}")
    if a.rank == b.rank == c.rank == 0:
        if a.order * c.order != b.order:
            raise InconsistentSpec(f"{where}: orders {a.order}·{c.order} ≠ {b.order}")
        if not embeds(c, b):
            raise InconsistentSpec(f"{where}: {c} is not a quotient of {b}")


def les_solve(sequence: LESSpec) -> LESResult:
    """Resolve unknowns of an exact sequence where exactness forces them.

    The sequence splits at zero entries. A term between two zeros is zero;
    ``0 → A → B → 0`` forces ``A ≅ B``; ``0 → A → B → C → 0`` with abelian
    entries yields rank/order constraints and a value only when it is
    forced. Other unknowns are reported as ambiguous. Known entries that
    violate exactness raise :class:`InconsistentSpec`.
    """
    res = LESResult(sequence)
    entries = list(sequence.entries)
    zero_pos = [i for i, e in enumerate(entries) if isinstance(e, Zero)]
    closed = set()
    for lo, hi in zip(zero_pos, zero_pos[1:]):
        seg = list(range(lo + 1, hi))
        if seg:
            closed.update(seg)
            _solve_segment(res, entries, seg)
    for i, e in enumerate(entries):
        if isinstance(e, Unknown) and e.name not in res.resolved:
            if i not in closed:
                res.constraints.setdefault(e.name, []).append("not enclosed by zeros; no deduction")
            if e.name not in res.ambiguous:
                res.ambiguous.append(e.name)
    return res


def _solve_segment(res: LESResult, entries: list, seg: list[int]) -> None:
    vals = [entries[i] for i in seg]
    where = " → ".join(["0"] + [str(v) for v in vals] + ["0"])
    if len(seg) == 1:
        e = vals[0]
        if isinstance(e, Unknown):
            res.resolved[e.name] = Zero()
            res.deductions.append(f"{e} = 0 (flanked by zeros in {where})")
        else:
            raise InconsistentSpec(f"{where}: a nonzero term between zeros violates exactness")
        return
    if len(seg) == 2:
        a, b = vals
        if isinstance(a, Unknown) and isinstance(b, Unknown):
            for u, v in ((a, b), (b, a)):
                res.constraints.setdefault(u.name, []).append(f"≅ {v}")
        elif isinstance(a, Unknown):
            res.resolved[a.name] = b
            res.deductions.append(f"{a} ≅ {b} (isomorphism in {where})")
        elif isinstance(b, Unknown):
            res.resolved[b.name] = a
            res.deductions.append(f"{b} ≅ {a} (isomorphism in {where})")
        elif not _same(a, b):
            raise InconsistentSpec(f"{where}: {a} and {b} cannot be isomorphic")
        return
    if len(seg) == 3:
        _solve_short_exact(res, vals, where)
        return
    for e in vals:
        if isinstance(e, Unknown):
            res.constraints.setdefault(e.name, []).append(f"segment of length {len(seg)}; no deduction")


def _solve_short_exact(res: LESResult, vals, where: str) -> None:
    a, b, c = vals
    if any(isinstance(v, FiniteTag) for v in vals):
        for v in vals:
            if isinstance(v, Unknown):
                res.constraints.setdefault(v.name, []).append("nonabelian entry in a short exact sequence; no deduction")
        return
    A, B, C = (_as_abelian(v) for v in vals)
    unknowns = [v for v in vals if isinstance(v, Unknown)]
    if not unknowns:
        _check_ses(A, B, C, where)
        res.deductions.append(f"{where} is consistent with exactness")
        return
    if len(unknowns) > 1:
        for v in unknowns:
            res.constraints.setdefault(v.name, []).append(f"two or more unknowns in {where}")
        return
    u = unknowns[0]

    def settle(g: FGAbelianGroup, why: str):
        res.resolved[u.name] = _normalize(Known(g))
        res.deductions.append(f"{u} ≅ {g} ({why})")

    def constrain(text: str):
        res.constraints.setdefault(u.name, []).append(text)

    if isinstance(b, Unknown):
        rank = A.rank + C.rank
        if not C.torsion:
            settle(A + C, f"C free, so {where} splits")
        elif A.rank == C.rank == 0 and math.gcd(A.order, C.order) == 1:
            settle(A + C, f"coprime orders in {where}")
        else:
            constrain(f"rank {rank}")
            if A.rank == C.rank == 0:
                constrain(f"order {A.order * C.order}")
            constrain("extension not determined")
        return
    # A or C unknown: both are pinned down by B and the other end
    known_end = C if isinstance(a, Unknown) else A
    rank = B.rank - known_end.rank
    if rank < 0:
        raise InconsistentSpec(f"{where}: rank of {known_end} exceeds rank of {B}")
    if isinstance(c, Unknown) and A == B and B.rank == 0:
        settle(FGAbelianGroup(0), f"A ≅ B finite in {where}")
        return
    if not embeds(known_end, B):
        raise InconsistentSpec(f"{where}: torsion of {known_end} does not fit in {B}")
    if B.rank == 0:
        if B.order % known_end.order:
            raise InconsistentSpec(f"{where}: {known_end} cannot be a {'quotient' if isinstance(a, Unknown) else 'subgroup'} of {B}")
        order = B.order // known_end.order
        if order == 1:
            settle(FGAbelianGroup(0), f"order count in {where}")
        elif _is_prime(order):
            settle(FGAbelianGroup(0, (order,)), f"order {order} is prime in {where}")
        elif _cyclic(B):
            settle(FGAbelianGroup(0, (order,)), f"sub/quotients of a cyclic group are cyclic in {where}")
        else:
            constrain(f"order {order}")
            constrain("isomorphism type not determined")
        return
    constrain(f"rank {rank}")
    constrain("torsion not determined")
