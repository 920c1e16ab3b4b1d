"""Slow, independent reference computations used by the property checks."""

from __future__ import annotations

import random
from itertools import product
from typing import Sequence

import sympy

from .monomials import MonomialIdeal
from .polytope import Polytope, convex_hull, is_reflexive
from .toric import ToricData


def _common_multiples(a: Sequence[int], b: Sequence[int], extra: int) -> list[tuple[int, ...]]:
    """Monomials divisible by both ``a`` and ``b`` of degree at most ``deg(lcm) + extra``."""
    base = tuple(max(x, y) for x, y in zip(a, b))
    out = []
    for bump in product(range(extra + 1), repeat=len(base)):
        if sum(bump) <= extra:
            out.append(tuple(x + y for x, y in zip(base, bump)))
    return out


def hom_constraints(alpha: Sequence[int], I0: MonomialIdeal, T: ToricData, extra: int = 1):
    """Linear conditions on the coefficients of a degree-``alpha`` homomorphism.

    A homomorphism sends ``m_j`` to ``c_j x^{m_j + A alpha}``; only generators
    whose shifted exponent is nonnegative and outside ``I0`` get an unknown.
    For every common multiple ``w = u_i m_i = u_j m_j`` both ways of computing
    the image of ``w`` must agree modulo ``I0``.  Returns ``(unknowns, rows)``.
    """
    shift = T.pairing(alpha)
    gens = I0.generators
    unknowns = []
    for j, g in enumerate(gens):
        e = tuple(a + b for a, b in zip(g, shift))
        if min(e) >= 0 and not I0.contains(e):
            unknowns.append(j)
    col = {j: k for k, j in enumerate(unknowns)}
    rows = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            for w in _common_multiples(gens[i], gens[j], extra):
                target = tuple(a + b for a, b in zip(w, shift))
                if min(target) < 0 or I0.contains(target):
                    continue
                row = [0] * len(unknowns)
                if i in col:
                    row[col[i]] += 1
                if j in col:
                    row[col[j]] -= 1
                if any(row):
                    rows.append(row)
    return unknowns, rows


def hom_dimension(alpha: Sequence[int], I0: MonomialIdeal, T: ToricData) -> int:
    unknowns, rows = hom_constraints(alpha, I0, T)
    if not unknowns:
        return 0
    if not rows:
        return len(unknowns)
    return len(unknowns) - sympy.Matrix(rows).rank()


def candidate_box(I0: MonomialIdeal, T: ToricData) -> list[tuple[int, ...]]:
    """Every ``alpha`` in a box large enough to contain all candidate points."""
    bound = max((sum(g) for g in I0.generators), default=0) * max(1, max(abs(x) for r in T.rays for x in r))
    pts = []
    for alpha in product(range(-bound, bound + 1), repeat=T.n):
        shift = T.pairing(alpha)
        if any(min(a + b for a, b in zip(g, shift)) >= 0 for g in I0.generators):
            pts.append(alpha)
    return pts


# ---------------------------------------------------------------------------
# Curated reflexive polytopes


CURATED_REFLEXIVE: dict[str, list[tuple[int, ...]]] = {
    "P2": [(1, 0), (0, 1), (-1, -1)],
    "P2 dual": [(-1, -1), (2, -1), (-1, 2)],
    "P1xP1": [(1, 0), (0, 1), (-1, 0), (0, -1)],
    "square": [(1, 1), (1, -1), (-1, 1), (-1, -1)],
    "hexagon": [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)],
    "P112": [(1, 0), (0, 1), (-1, -2)],
    "P112 dual": [(-1, 1), (-1, -1), (3, -1)],
    "F1": [(1, 0), (0, 1), (-1, 1), (0, -1)],
    "octahedron": [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
    "cube": [tuple(v) for v in product((-1, 1), repeat=3)],
    "P3": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
    "P3 dual": [(-1, -1, -1), (3, -1, -1), (-1, 3, -1), (-1, -1, 3)],
    "P4": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)],
    "P4 dual": [(-1, -1, -1, -1), (4, -1, -1, -1), (-1, 4, -1, -1), (-1, -1, 4, -1), (-1, -1, -1, 4)],
    "cross4": [tuple(s if k == i else 0 for k in range(4)) for i in range(4) for s in (1, -1)],
    "hypercube4": [tuple(v) for v in product((-1, 1), repeat=4)],
}


def random_unimodular(n: int, rng: random.Random, steps: int = 6) -> list[list[int]]:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        kind = rng.random()
        if kind < 0.6 and i != j:
            c = rng.choice((-1, 1))
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif kind < 0.8:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-a for a in m[i]]
    return m


def random_reflexive_samples(count: int, seed: int) -> list[tuple[str, Polytope]]:
    """Curated reflexive polytopes under seeded random GL(n, Z) changes of basis."""
    rng = random.Random(seed)
    names = sorted(CURATED_REFLEXIVE)
    out = []
    for _ in range(count):
        name = rng.choice(names)
        verts = CURATED_REFLEXIVE[name]
        n = len(verts[0])
        g = random_unimodular(n, rng)
        moved = [tuple(sum(g[i][k] * v[k] for k in range(n)) for i in range(n)) for v in verts]
        p = convex_hull(moved)
        if not is_reflexive(p):
            raise AssertionError(f"curated polytope {name} is not reflexive")
        out.append((name, p))
    return out


def random_point_sets(count: int, seed: int) -> list[list[tuple[int, ...]]]:
    rng = random.Random(seed)
    sets = []
    for _ in range(count):
        n = rng.choice((2, 3, 4))
        k = rng.randint(n + 1, 12)
        sets.append([tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(k)])
    return sets


def random_squarefree_ideals(T: ToricData, count: int, seed: int) -> list[MonomialIdeal]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(1, 3)
        gens = []
        for _ in range(k):
            size = rng.randint(1, T.nrays - 1)
            chosen = set(rng.sample(range(T.nrays), size))
            gens.append(tuple(int(i in chosen) for i in range(T.nrays)))
        out.append(T.ideal(gens))
    return out
