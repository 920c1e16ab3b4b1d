"""Toric data of a Fano polytope: rays, cones, Cox grading and divisors.

The class group ``A_{n-1}(Y)`` is presented as the cokernel of the ray matrix
``A`` (rows = primitive ray generators).  Its Smith normal form gives a
canonical coordinate system: a class is a pair (free part, torsion part) with
torsion entries reduced modulo their orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import NotCartier, NotFano
from .lattice import (
    column_echelon,
    dot,
    kernel_basis,
    mat_vec,
    primitive,
    smith_normal_form,
    solve_integer,
    solve_rational,
    transpose,
)
from .monomials import MonomialIdeal, squarefree
from .polytope import Polytope, convex_hull, lattice_points, polar_dual, polytope_from_inequalities

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class DivisorClass:
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        text = "(" + ", ".join(str(x) for x in self.free) + ")"
        if self.torsion:
            text += " torsion (" + ", ".join(str(x) for x in self.torsion) + ")"
        return text


@dataclass(frozen=True)
class CartierCheck:
    """Result of :func:`is_cartier`: the verdict plus one ``m_sigma`` per cone."""

    is_cartier: bool
    certificates: tuple[Optional[tuple[int, ...]], ...]

    def __bool__(self) -> bool:
        return self.is_cartier


@dataclass(frozen=True)
class PicardSublattice:
    generators: tuple[DivisorClass, ...]
    index: Optional[int]  # None when Pic has smaller rank than the class group


class ToricData:
    """Fan over the faces of a Fano polytope ``P`` and its Cox grading."""

    def __init__(self, fano: Polytope, var: str = "y"):
        self.fano = fano
        self.var = var
        self.n = fano.ambient_dim
        self.rays: tuple[tuple[int, ...], ...] = tuple(primitive(v) for v in fano.integer_vertices())
        self.max_cones: tuple[frozenset[int], ...] = tuple(fano.incidence)
        snf = smith_normal_form(self.rays, self.n)
        self._snf = snf
        divisors = snf.elementary_divisors
        r = len(divisors)
        self._torsion_rows = [i for i, d in enumerate(divisors) if d > 1]
        self.torsion = tuple(divisors[i] for i in self._torsion_rows)
        left = [list(row) for row in snf.left]
        free_rows = list(range(r, len(self.rays)))
        # fix the sign of each free coordinate so that -K has nonnegative degree
        anti = [1] * len(self.rays)
        for i in free_rows:
            val = dot(left[i], anti)
            first = next((x for x in left[i] if x), 0)
            if val < 0 or (val == 0 and first < 0):
                left[i] = [-x for x in left[i]]
        self._free_rows = [tuple(left[i]) for i in free_rows]
        self._tors_left = [tuple(left[i]) for i in self._torsion_rows]

    def __repr__(self) -> str:
        return f"ToricData(rays={len(self.rays)}, dim={self.n}, class_group={self.class_group_str()})"

    @property
    def nrays(self) -> int:
        return len(self.rays)

    @property
    def free_rank(self) -> int:
        return len(self._free_rows)

    def class_group_str(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank != 1 else ["Z"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts)

    @cached_property
    def delta(self) -> Polytope:
        """The dual polytope ``P*``, whose faces index the torus orbits."""
        return polar_dual(self.fano)

    def degree(self, e: Sequence[int]) -> DivisorClass:
        free = tuple(dot(row, e) for row in self._free_rows)
        tors = tuple(dot(row, e) % t for row, t in zip(self._tors_left, self.torsion))
        return DivisorClass(free, tors)

    def degree_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Columns = free-part degrees of the variables."""
        return tuple(self._free_rows)

    def pairing(self, alpha: Sequence[int]) -> tuple[int, ...]:
        """``A alpha``: the exponent vector of the Laurent monomial of ``alpha``."""
        return tuple(dot(r, alpha) for r in self.rays)

    def alpha_of(self, exponent: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Inverse of :meth:`pairing` on its image, or None."""
        return solve_integer(self.rays, exponent, self.n)

    def ideal(self, gens: Sequence[Sequence[int]]) -> MonomialIdeal:
        return MonomialIdeal.from_generators(self.nrays, gens, self.var)

    def anticanonical(self) -> Exponent:
        return tuple([1] * self.nrays)

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "maxCones": [sorted(c) for c in self.max_cones],
            "classGroup": {"freeRank": self.free_rank, "torsion": list(self.torsion)},
            "degrees": [list(self.degree(squarefree([i], self.nrays)).free) for i in range(self.nrays)],
        }


def toric_from_fano(P: Polytope, var: str = "y") -> ToricData:
    """Toric data of the fan over the faces of a Fano polytope.

    Rays follow the vertex order of ``P``.
    """
    if not P.is_full_dimensional:
        raise NotFano("Fano polytope must be full-dimensional")
    if not P.is_integral:
        raise NotFano("Fano polytope must be integral")
    interior = [x for x in lattice_points(P) if P.interior_contains(x)]
    if interior != [tuple([0] * P.ambient_dim)]:
        raise NotFano(f"interior lattice points are {interior}, expected only the origin")
    return ToricData(P, var)


def toric_from_rays(rays: Sequence[Sequence[int]], max_cones: Optional[Sequence[Sequence[int]]] = None, var: str = "y") -> ToricData:
    """Toric data from explicit rays, checking that they are the vertices of a Fano polytope."""
    rays = [tuple(int(x) for x in r) for r in rays]
    P = convex_hull(rays)
    if len(P.vertices) != len(rays):
        raise NotFano("every ray generator must be a vertex of the Fano polytope")
    T = toric_from_fano(P, var)
    if max_cones is not None:
        given = sorted(tuple(sorted(c)) for c in max_cones)
        actual = sorted(tuple(sorted(c)) for c in T.max_cones)
        if given != actual:
            raise NotFano("maximal cones do not match the facets of the ray polytope")
    return T


def divisor_polytope(T: ToricData, D: Sequence[int]) -> Polytope:
    """``{m : <m, r> >= -a_r for every ray r}`` for ``D = sum a_r D_r``."""
    if len(D) != T.nrays:
        raise ValueError("divisor has the wrong number of coefficients")
    return polytope_from_inequalities(T.rays, list(D), T.n)


def sections_basis(T: ToricData, c: Optional[DivisorClass], representative: Sequence[int]) -> list[Exponent]:
    """Monomials of the Cox ring in the class of ``representative``."""
    if c is not None and T.degree(representative) != c:
        raise ValueError("representative does not have the requested class")
    poly = divisor_polytope(T, representative)
    return [tuple(a + b for a, b in zip(T.pairing(m), representative)) for m in lattice_points(poly)]


def is_cartier(T: ToricData, D: Sequence[int]) -> CartierCheck:
    certs = []
    for cone in T.max_cones:
        idx = sorted(cone)
        sol = solve_integer([T.rays[i] for i in idx], [-D[i] for i in idx], T.n)
        certs.append(sol)
    return CartierCheck(all(c is not None for c in certs), tuple(certs))


def is_nef(T: ToricData, D: Sequence[int]) -> bool:
    check = is_cartier(T, D)
    if not check:
        raise NotCartier("nef test needs a Cartier divisor")
    return all(dot(m, r) >= -a for m in check.certificates for r, a in zip(T.rays, D))


def cartier_divisor_lattice(T: ToricData) -> tuple[tuple[int, ...], ...]:
    """Generators of the lattice of T-Cartier divisors in ``Z^rays``."""
    m, n = T.nrays, T.n
    ncones = len(T.max_cones)
    rows = []
    for k, cone in enumerate(T.max_cones):
        for r in sorted(cone):
            row = [0] * (m + n * ncones)
            row[r] = 1
            row[m + k * n : m + (k + 1) * n] = T.rays[r]
            rows.append(row)
    basis = kernel_basis(rows, m + n * ncones)
    gens = [tuple(v[:m]) for v in basis]
    # reduce to a basis of the projected lattice
    h, _, pivots = column_echelon(transpose(gens, m), len(gens))
    return tuple(tuple(h[i][j] for i in range(m)) for j in range(len(pivots)))


def _subgroup_index(T: ToricData, classes: Sequence[DivisorClass]) -> tuple[list[tuple[int, ...]], Optional[int]]:
    f, k = T.free_rank, len(T.torsion)
    vecs = [c.free + c.torsion for c in classes]
    for i, t in enumerate(T.torsion):
        rel = [0] * (f + k)
        rel[f + i] = t
        vecs.append(tuple(rel))
    if not vecs:
        return [], (1 if f + k == 0 else None)
    h, _, pivots = column_echelon(transpose(vecs, f + k), len(vecs))
    basis = [tuple(h[i][j] for i in range(f + k)) for j in range(len(pivots))]
    if len(pivots) < f + k:
        return basis, None
    index = 1
    for j, r in enumerate(pivots):
        index *= h[r][j]
    return basis, abs(index)


def picard_sublattice(T: ToricData) -> PicardSublattice:
    """Subgroup of classes of Cartier divisors, with its index when finite."""
    images = [T.degree(v) for v in cartier_divisor_lattice(T)]
    basis, index = _subgroup_index(T, images)
    f = T.free_rank
    gens = []
    for b in basis:
        c = DivisorClass(tuple(b[:f]), tuple(x % t for x, t in zip(b[f:], T.torsion)))
        if any(c.free) or any(c.torsion):
            gens.append(c)
    return PicardSublattice(tuple(gens), index)


def irrelevant_ideal(T: ToricData) -> MonomialIdeal:
    gens = [squarefree(set(range(T.nrays)) - cone, T.nrays) for cone in T.max_cones]
    return T.ideal(gens)


def weight_lift(T: ToricData, w: Sequence) -> tuple[Fraction, ...]:
    """``A w``: a section of the quotient from ray weights to ``N_R``."""
    if len(w) != T.n:
        raise ValueError("weight has the wrong length")
    return tuple(Fraction(x) for x in mat_vec(T.rays, w))


def weight_quotient(T: ToricData, u: Sequence) -> tuple[Fraction, ...]:
    """Left inverse of :func:`weight_lift`: ``(A^T A)^{-1} A^T u``."""
    at = transpose(T.rays)
    gram = [[dot(a, b) for b in at] for a in at]
    rhs = [dot(a, u) for a in at]
    sol = solve_rational(gram, rhs)
    assert sol is not None
    return sol
