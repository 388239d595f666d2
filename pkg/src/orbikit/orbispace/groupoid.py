"""Action groupoids of global quotients and their discrete equivalence test."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.groups import FiniteGroup, describe_group, groups_isomorphic, subgroup
from ..errors import ExplicitFormUnsupported
from .core import Orbispace


@dataclass(frozen=True)
class ActionGroupoid:
    """Objects ``0..n-1`` with morphisms ``(g, x): x -> g·x``."""

    group: FiniteGroup
    perms: tuple[tuple[int, ...], ...]  # perms[g][x] = g·x
    labels: tuple = ()

    @property
    def objects(self) -> range:
        return range(len(self.perms[0]))

    def target(self, g: int, x: int) -> int:
        return self.perms[g][x]

    def compose(self, second: tuple[int, int], first: tuple[int, int]) -> tuple[int, int]:
        """``(h, g·x) ∘ (g, x) = (hg, x)``."""
        h, y = second
        g, x = first
        if self.target(g, x) != y:
            raise ValueError("morphisms are not composable")
        return self.group.mul(h, g), x

    def inverse(self, m: tuple[int, int]) -> tuple[int, int]:
        g, x = m
        return self.group.inv(g), self.target(g, x)

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for x in self.objects:
            if x not in seen:
                orb = sorted({self.perms[g][x] for g in range(self.group.order)})
                seen.update(orb)
                out.append(orb)
        return out

    def isotropy(self, x: int) -> FiniteGroup:
        H, _ = subgroup(self.group, [g for g in range(self.group.order) if self.perms[g][x] == x])
        return FiniteGroup(H.table, name=describe_group(H), elements=H.elements)

    def isotropy_profile(self) -> list[str]:
        return [describe_group(self.isotropy(orb[0])) for orb in self.orbits()]


def action_groupoid(M: Orbispace) -> ActionGroupoid:
    """Objects are the vertices of the input complex when there is one, else the 0-cells of X."""
    if not M.is_global:
        raise ExplicitFormUnsupported("action groupoids need a global quotient")
    G = M.borel.G
    if M.vertex_action is not None:
        return ActionGroupoid(G, tuple(tuple(p) for p in M.vertex_action), tuple(M.complex.vertices))
    perms = tuple(tuple(M.borel.action.perms[g][0]) for g in range(G.order))
    return ActionGroupoid(G, perms, tuple(range(len(perms[0]))))


@dataclass(frozen=True)
class GroupoidComparison:
    equivalent: bool
    orbit_counts: tuple[int, int]
    left_isotropy: tuple[str, ...]
    right_isotropy: tuple[str, ...]
    reason: str


def groupoid_equivalent(A: ActionGroupoid, B: ActionGroupoid) -> GroupoidComparison:
    """Orbit sets matched bijectively with isomorphic isotropy groups."""
    oa, ob = A.orbits(), B.orbits()
    ia = [A.isotropy(o[0]) for o in oa]
    ib = [B.isotropy(o[0]) for o in ob]
    la = tuple(sorted(describe_group(g) for g in ia))
    lb = tuple(sorted(describe_group(g) for g in ib))
    counts = (len(oa), len(ob))
    if len(oa) != len(ob):
        return GroupoidComparison(False, counts, la, lb, "orbit counts differ")
    unmatched = list(ib)
    for g in ia:
        for j, h in enumerate(unmatched):
            if groups_isomorphic(g, h)[0]:
                unmatched.pop(j)
                break
        else:
            return GroupoidComparison(False, counts, la, lb, f"no orbit with isotropy {describe_group(g)} on the right")
    return GroupoidComparison(True, counts, la, lb, "orbits matched with isomorphic isotropy")
