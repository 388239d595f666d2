"""Invariant tables separating orbispaces; symbolic records for non-simplicial cases."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.groups import describe_group, groups_isomorphic
from ..algebra.homology import homology
from ..algebra.linalg import FGAbelianGroup
from ..fundamental import DEFAULT_MAX_COSETS, Pi1Result, fundamental_group
from ..simplicial import SimplicialSet
from .core import Orbispace, stabilizer
from .les import LESResult, LESSpec, Zero, les_solve


@dataclass(eq=False)
class SymbolicOrbispace:
    """An orbispace known only through some invariants.

    Used for quotients by continuous groups, which have no simplicial
    model here: the underlying space is a complex, stabilizers are a tag
    valid at every point, and π₁ of the Borel space comes from an exact
    sequence.
    """

    name: str
    underlying: SimplicialSet | None
    stabilizer_everywhere: str | None
    pi1: str | None
    les: LESResult | None = None
    notes: list[str] = field(default_factory=list)

    @classmethod
    def from_les(cls, name: str, underlying: SimplicialSet | None, stabilizer_tag: str,
                 sequence: LESSpec, unknown: str) -> "SymbolicOrbispace":
        res = les_solve(sequence)
        val = res.value(unknown)
        pi1 = None if val is None else ("0" if isinstance(val, Zero) else str(val))
        notes = [f"π₁ of the Borel space from the exact sequence {sequence}"]
        return cls(name, underlying, stabilizer_tag, pi1, res, notes)


@dataclass
class ComparisonRow:
    invariant: str
    left: str
    right: str
    differs: bool | None  # None when not comparable


@dataclass
class ComparisonReport:
    left: str
    right: str
    degree: int
    rows: list[ComparisonRow]
    notes: list[str]

    @property
    def distinguished(self) -> bool:
        return any(r.differs for r in self.rows)

    @property
    def verdict(self) -> str:
        if self.distinguished:
            return "distinguished"
        return f"not distinguished at degree {self.degree}"


def _hom_str(X: SimplicialSet, d: int) -> str:
    return ", ".join(str(g) for g in homology(X, range(d + 1), check=False))


def _pi1_str(r: Pi1Result) -> str:
    if r.order == 1:
        return "0"
    if r.group is not None:
        return str(r.abelianization) if r.group.is_abelian() else describe_group(r.group)
    return f"{r.order}; abelianization {r.abelianization}"


def _stab_profile(M: Orbispace, max_cosets: int) -> list[str]:
    return sorted(describe_group(stabilizer(M, x, max_cosets)) for x in range(M.Q.count(0)))


def compare_orbispaces(M, N, d: int = 1, max_cosets: int = DEFAULT_MAX_COSETS) -> ComparisonReport:
    """Tabulate H_*(Q), H_*(P), π₁(P) and stabilizers; never asserts isomorphism."""
    for side in (M, N):
        if isinstance(side, Orbispace) and d > side.valid_degree:
            raise ValueError(f"degree {d} above the valid degree of {side.name}")
    rows: list[ComparisonRow] = []
    notes: list[str] = []

    def add(inv, a, b, differs):
        rows.append(ComparisonRow(inv, a if a is not None else "n/a", b if b is not None else "n/a", differs))

    # underlying spaces
    qa = _hom_str(M.Q if isinstance(M, Orbispace) else M.underlying, d) if _has_q(M) else None
    qb = _hom_str(N.Q if isinstance(N, Orbispace) else N.underlying, d) if _has_q(N) else None
    add(f"H_0..{d}(Q)", qa, qb, None if qa is None or qb is None else qa != qb)

    # Borel spaces
    pa = _hom_str(M.P, d) if isinstance(M, Orbispace) else None
    pb = _hom_str(N.P, d) if isinstance(N, Orbispace) else None
    add(f"H_0..{d}(P)", pa, pb, None if pa is None or pb is None else pa != pb)

    # π₁ of Borel spaces
    ra = fundamental_group(M.P, 0, max_cosets, identify=True) if isinstance(M, Orbispace) else None
    rb = fundamental_group(N.P, 0, max_cosets, identify=True) if isinstance(N, Orbispace) else None
    sa = _pi1_str(ra) if ra is not None else M.pi1
    sb = _pi1_str(rb) if rb is not None else N.pi1
    if ra is not None and rb is not None and ra.group is not None and rb.group is not None:
        differs = not groups_isomorphic(ra.group, rb.group)[0]
    elif ra is not None and rb is not None:
        orders_differ = ra.finite and rb.finite and ra.order != rb.order
        differs = True if orders_differ or ra.abelianization != rb.abelianization else None
    elif sa is None or sb is None:
        differs = None
    else:
        differs = _abelian_str_differs(sa, sb)
    add("π₁(P)", sa, sb, differs)

    # stabilizers
    if isinstance(M, Orbispace) and isinstance(N, Orbispace):
        la, lb = _stab_profile(M, max_cosets), _stab_profile(N, max_cosets)
        add("stabilizers per vertex of Q", "; ".join(la), "; ".join(lb), la != lb)
    else:
        ta = sorted(set(_stab_profile(M, max_cosets))) if isinstance(M, Orbispace) else [M.stabilizer_everywhere]
        tb = sorted(set(_stab_profile(N, max_cosets))) if isinstance(N, Orbispace) else [N.stabilizer_everywhere]
        add("stabilizer types", "; ".join(ta), "; ".join(tb), ta != tb)
    for side in (M, N):
        if isinstance(side, SymbolicOrbispace):
            notes.append(f"{side.name} is a symbolic record; only the invariants shown for it were compared")
            notes.extend(side.notes)
    return ComparisonReport(_name(M), _name(N), d, rows, notes)


def _has_q(side) -> bool:
    return isinstance(side, Orbispace) or side.underlying is not None


def _name(side) -> str:
    return side.name or "?"


def _abelian_str_differs(a: str, b: str) -> bool | None:
    try:
        return FGAbelianGroup.parse(a) != FGAbelianGroup.parse(b)
    except ValueError:
        return None if a != b else False
