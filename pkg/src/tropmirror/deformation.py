"""Torus-invariant first-order deformations of a monomial ideal.

A lattice point ``alpha`` of ``M`` acts on Cox monomials by multiplying with
the Laurent monomial ``x^{A alpha}``.  It induces a degree-0 homomorphism from
``I0`` to ``S/I0`` by shifting each generator, where shifted monomials that
fall into ``I0`` (or have a negative exponent) become zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import Unbounded, UnboundedCandidatePolytope
from .monomials import Exponent, MonomialIdeal, format_monomial, lcm
from .polytope import lattice_points
from .toric import ToricData, divisor_polytope


@dataclass(frozen=True)
class DeformationDirection:
    """The homomorphism attached to ``alpha``; ``images[j]`` is None for zero."""

    alpha: tuple[int, ...]
    images: tuple[Optional[Exponent], ...]

    @property
    def nonzero(self) -> bool:
        return any(im is not None for im in self.images)

    @property
    def moved(self) -> frozenset[int]:
        return frozenset(j for j, im in enumerate(self.images) if im is not None)

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "images": [None if im is None else list(im) for im in self.images],
        }

    def describe(self, var: str = "x") -> str:
        ims = ", ".join("0" if im is None else format_monomial(im, var) for im in self.images)
        return f"alpha={list(self.alpha)}: [{ims}]"


@dataclass(frozen=True)
class PT1Basis:
    directions: tuple[DeformationDirection, ...]

    def alphas(self) -> list[tuple[int, ...]]:
        return [d.alpha for d in self.directions]

    def grouping(self) -> dict[frozenset[int], list[DeformationDirection]]:
        """Directions grouped by the set of generators they move."""
        groups: dict[frozenset[int], list[DeformationDirection]] = {}
        for d in self.directions:
            groups.setdefault(d.moved, []).append(d)
        return groups

    def __len__(self) -> int:
        return len(self.directions)

    def to_json(self) -> dict:
        return {"directions": [d.to_json() for d in self.directions]}


def candidate_points(I0: MonomialIdeal, T: ToricData) -> list[tuple[int, ...]]:
    """Lattice points ``alpha`` with ``A alpha + exp(m_j) >= 0`` for some generator."""
    points: set[tuple[int, ...]] = set()
    for g in I0.generators:
        try:
            poly = divisor_polytope(T, g)
        except Unbounded as exc:
            raise UnboundedCandidatePolytope(f"sections of {format_monomial(g, I0.var)} are unbounded") from exc
        points.update(lattice_points(poly))
    return sorted(points)


def shifted_images(
    alpha: Sequence[int], I0: MonomialIdeal, T: ToricData, modulo: Optional[MonomialIdeal] = None
) -> list[Optional[Exponent]]:
    """Shift every generator by ``alpha``, truncating to zero as described above."""
    quotient = modulo if modulo is not None else I0
    shift = T.pairing(alpha)
    images: list[Optional[Exponent]] = []
    for g in I0.generators:
        e = tuple(a + b for a, b in zip(g, shift))
        images.append(e if min(e) >= 0 and not quotient.contains(e) else None)
    return images


def hom_from_point(
    alpha: Sequence[int], I0: MonomialIdeal, T: ToricData, modulo: Optional[MonomialIdeal] = None
) -> Optional[DeformationDirection]:
    """The homomorphism of character ``alpha``, or None when it vanishes.

    The shifted generators are checked against the pairwise lcm relations of
    ``I0``.  For a pair ``(i, j)`` where ``m_j`` maps to zero, the relation
    forces ``(lcm/m_i) * image_i`` into ``I0``; if it is not, ``image_i`` is
    set to zero as well.  This is repeated until stable, giving the largest
    well-defined map supported on the truncated shifts.  Pairs with both
    images nonzero always agree since both sides equal ``x^{lcm + A alpha}``.

    ``modulo`` replaces ``I0`` as the ideal of the target ring ``S/modulo``;
    it must contain ``I0``.  This evaluates a map defined on a larger ideal
    on some of its elements.
    """
    alpha = tuple(int(a) for a in alpha)
    quotient = modulo if modulo is not None else I0
    images = shifted_images(alpha, I0, T, quotient)
    shift = T.pairing(alpha)
    gens = I0.generators
    changed = True
    while changed:
        changed = False
        for i, im in enumerate(images):
            if im is None:
                continue
            for j, other in enumerate(images):
                if other is not None:
                    continue
                w = tuple(a + b for a, b in zip(lcm(gens[i], gens[j]), shift))
                if not quotient.contains(w):
                    images[i] = None
                    changed = True
                    break
    direction = DeformationDirection(alpha, tuple(images))
    return direction if direction.nonzero else None


def pt1_basis(I0: MonomialIdeal, T: ToricData) -> PT1Basis:
    """All nonzero directions over the candidate points, sorted by ``alpha``."""
    directions = []
    for alpha in candidate_points(I0, T):
        if not any(alpha):
            continue
        d = hom_from_point(alpha, I0, T)
        if d is not None:
            directions.append(d)
    return PT1Basis(tuple(directions))
