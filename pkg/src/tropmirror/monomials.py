"""Monomial ideals in a Cox ring, stored by exponent vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Exponent = tuple[int, ...]


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Sequence[int], b: Sequence[int]) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def support(e: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(e) if x)


def squarefree(indices: Iterable[int], nvars: int) -> Exponent:
    s = set(indices)
    return tuple(int(i in s) for i in range(nvars))


def minimalize(gens: Iterable[Sequence[int]]) -> tuple[Exponent, ...]:
    """Drop generators divisible by another generator; sort the rest."""
    uniq = sorted({tuple(g) for g in gens}, key=lambda g: (sum(g), g))
    kept: list[Exponent] = []
    for g in uniq:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept, key=lambda g: (sum(g), tuple(-x for x in g))))


def format_monomial(e: Sequence[int], var: str = "x") -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"{var}{i}")
        elif k:
            parts.append(f"{var}{i}^{k}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by a minimal generating set.

    ``generators`` is empty for the zero ideal and contains the zero exponent
    for the unit ideal.
    """

    nvars: int
    generators: tuple[Exponent, ...]
    var: str = field(default="x", compare=False)

    @classmethod
    def from_generators(cls, nvars: int, gens: Iterable[Sequence[int]], var: str = "x") -> "MonomialIdeal":
        gens = [tuple(int(x) for x in g) for g in gens]
        for g in gens:
            if len(g) != nvars:
                raise ValueError(f"generator {g} does not have {nvars} exponents")
            if any(x < 0 for x in g):
                raise ValueError(f"generator {g} has a negative exponent")
        return cls(nvars, minimalize(gens), var)

    @property
    def is_reduced(self) -> bool:
        return all(x in (0, 1) for g in self.generators for x in g)

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def contains(self, e: Sequence[int]) -> bool:
        """Membership of the monomial ``x^e`` (``e`` nonnegative)."""
        return any(divides(g, e) for g in self.generators)

    def supports(self) -> list[frozenset[int]]:
        return [support(g) for g in self.generators]

    def __str__(self) -> str:
        return "<" + ", ".join(format_monomial(g, self.var) for g in self.generators) + ">"


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal.from_generators(
        a.nvars, (lcm(g, h) for g in a.generators for h in b.generators), a.var
    )


def prime_ideal(indices: Iterable[int], nvars: int, var: str = "x") -> MonomialIdeal:
    return MonomialIdeal.from_generators(nvars, (squarefree([i], nvars) for i in indices), var)


def minimal_transversals(family: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    """Minimal sets meeting every member of ``family`` (Berge's algorithm).

    The empty family has the single transversal ``frozenset()``; a family
    containing the empty set has none.
    """
    current = [frozenset()]
    for edge in family:
        edge = frozenset(edge)
        nxt = set()
        for t in current:
            if t & edge:
                nxt.add(t)
            else:
                for e in edge:
                    nxt.add(t | {e})
        current = [t for t in nxt if not any(s < t for s in nxt)]
    return sorted(current, key=lambda s: (len(s), sorted(s)))
