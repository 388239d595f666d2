"""Fiberwise homotopy classes of sections of B x K(G,1) -> B."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.groups import FiniteGroup, classify_homs
from ..fundamental import GroupPresentation, pi1_presentation, tietze_simplify
from ..simplicial import SimplicialSet


@dataclass(frozen=True)
class VerticalMapClasses:
    presentation: GroupPresentation  # simplified π₁(B)
    group: FiniteGroup
    classes: tuple[tuple[int, ...], ...]  # generator images, least in each conjugacy class

    @property
    def count(self) -> int:
        return len(self.classes)


def classify_vertical_maps(B: SimplicialSet, G: FiniteGroup, base: int = 0) -> VerticalMapClasses:
    """``Hom(π₁ B, G)`` modulo conjugation, indexing sections of ``B x BG -> B`` up to homotopy over ``B``."""
    P = tietze_simplify(pi1_presentation(B, base)).presentation
    return VerticalMapClasses(P, G, tuple(classify_homs(P, G)))
