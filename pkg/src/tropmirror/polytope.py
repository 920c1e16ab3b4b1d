"""Exact rational polytopes.

A :class:`Polytope` carries both representations at once: its vertices and an
irredundant list of facet inequalities ``<normal, x> + offset >= 0`` with
primitive integer normals, together with the vertex/facet incidence table.
Lower-dimensional polytopes additionally carry the equations of their affine
span.  Faces are identified by their set of tight facets.

Hulls and vertex enumeration both go through :func:`extreme_rays`, a plain
double description (Motzkin) implementation over Python integers.  At the
sizes this package deals with (dimension <= 6, a few hundred points) this is
fast enough and never rounds.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, NotFullDimensional, OriginNotInterior, Unbounded
from .lattice import (
    clear_denominators,
    dot,
    kernel_basis,
    pivot_columns,
    primitive,
    rank,
    solve_rational,
)

RationalVector = tuple[Fraction, ...]
LatticeVector = tuple[int, ...]


# ---------------------------------------------------------------------------
# double description


def extreme_rays(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{x in R^dim : r.x >= 0 for r in rows}``.

    Rays are returned as primitive integer vectors.  Raises ``ValueError`` if
    the cone is not pointed (the rows do not span ``R^dim``).
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    # greedy choice of an initial basis of constraints
    basis: list[int] = []
    echelon: list[list[Fraction]] = []
    for idx, r in enumerate(rows):
        vec = [Fraction(x) for x in r]
        for piv_row in echelon:
            c = next(i for i, x in enumerate(piv_row) if x != 0)
            if vec[c] != 0:
                f = vec[c] / piv_row[c]
                vec = [a - f * b for a, b in zip(vec, piv_row)]
        if any(vec):
            echelon.append(vec)
            basis.append(idx)
            if len(basis) == dim:
                break
    if len(basis) < dim:
        raise ValueError("cone is not pointed")

    # initial simplicial cone: columns of the inverse of the basis matrix
    b_rows = [rows[i] for i in basis]
    rays: list[tuple[int, ...]] = []
    for k in range(dim):
        target = [int(i == k) for i in range(dim)]
        sol = solve_rational(b_rows, target)
        ray, _ = clear_denominators(sol)
        rays.append(primitive(ray))

    def tight_mask(ray: tuple[int, ...], processed: Iterable[int]) -> int:
        mask = 0
        for i in processed:
            if dot(rows[i], ray) == 0:
                mask |= 1 << i
        return mask

    processed = list(basis)
    masks = [tight_mask(r, processed) for r in rays]
    rest = [i for i in range(len(rows)) if i not in set(basis)]
    for i in rest:
        row = rows[i]
        vals = [dot(row, r) for r in rays]
        neg = [k for k, v in enumerate(vals) if v < 0]
        bit = 1 << i
        if not neg:
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            processed.append(i)
            continue
        pos = [k for k, v in enumerate(vals) if v > 0]
        new_rays: list[tuple[int, ...]] = []
        new_masks: list[int] = []
        for p in pos:
            for q in neg:
                common = masks[p] & masks[q]
                if bin(common).count("1") < dim - 2:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != q and (masks[k] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                combo = tuple(vp * a - vq * b for a, b in zip(rays[q], rays[p]))
                new_rays.append(primitive(combo))
                new_masks.append(common | bit)
        keep = [k for k, v in enumerate(vals) if v >= 0]
        rays = [rays[k] for k in keep] + new_rays
        masks = [masks[k] | bit if vals[k] == 0 else masks[k] for k in keep] + new_masks
        processed.append(i)
    return rays


# ---------------------------------------------------------------------------
# polytopes


def _frac_vec(v: Sequence) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Facet:
    """The inequality ``<normal, x> + offset >= 0``."""

    normal: LatticeVector
    offset: Fraction

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) + self.offset


@dataclass(frozen=True)
class Face:
    index: int
    dim: int
    facets: frozenset[int]
    vertices: frozenset[int]


class FaceLattice:
    """All faces of a polytope, graded by dimension."""

    def __init__(self, polytope: "Polytope", faces: Sequence[Face]):
        self.polytope = polytope
        self.faces: tuple[Face, ...] = tuple(faces)
        self._by_vertices = {f.vertices: f for f in self.faces}
        self._by_facets = {f.facets: f for f in self.faces}

    def __iter__(self):
        return iter(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def by_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def by_vertices(self, vertices: Iterable[int]) -> Optional[Face]:
        return self._by_vertices.get(frozenset(vertices))

    def by_facets(self, facets: Iterable[int]) -> Optional[Face]:
        return self._by_facets.get(frozenset(facets))

    @property
    def empty(self) -> Face:
        return self.faces[0]

    @property
    def top(self) -> Face:
        return self.faces[-1]

    def proper_faces(self) -> list[Face]:
        """Nonempty faces other than the polytope itself."""
        return [f for f in self.faces if 0 <= f.dim < self.polytope.dim]

    def face_of_points(self, points: Iterable[Sequence]) -> Face:
        """Smallest face containing all given points (which must lie in the polytope)."""
        points = list(points)
        tight = frozenset(
            i
            for i, fct in enumerate(self.polytope.facets)
            if all(fct.value(p) == 0 for p in points)
        )
        verts = frozenset(
            i for i in range(len(self.polytope.vertices)) if all(i in self.polytope.incidence[j] for j in tight)
        )
        return self._by_vertices[verts]

    def subfaces(self, face: Face) -> list[Face]:
        return [f for f in self.faces if f.vertices <= face.vertices]

    def superfaces(self, face: Face) -> list[Face]:
        return [f for f in self.faces if face.vertices <= f.vertices]

    def covers(self, face: Face) -> list[Face]:
        """Faces of dimension one less contained in ``face``."""
        return [f for f in self.faces if f.dim == face.dim - 1 and f.vertices <= face.vertices]

    def fvector(self) -> tuple[int, ...]:
        return fvector(self.faces, self.polytope.ambient_dim)


class Polytope:
    """A bounded polytope in both V- and H-representation.

    Instances are immutable by convention; use :func:`convex_hull`,
    :func:`polar_dual` or :func:`polytope_from_inequalities` to build them.
    """

    def __init__(
        self,
        ambient_dim: int,
        vertices: Sequence[Sequence],
        facets: Sequence[Facet],
        equations: Sequence[Facet] = (),
        incidence: Optional[Sequence[frozenset[int]]] = None,
        dim: Optional[int] = None,
    ):
        self.ambient_dim = ambient_dim
        self.vertices: tuple[RationalVector, ...] = tuple(_frac_vec(v) for v in vertices)
        self.facets: tuple[Facet, ...] = tuple(facets)
        self.equations: tuple[Facet, ...] = tuple(equations)
        if incidence is None:
            incidence = [
                frozenset(i for i, v in enumerate(self.vertices) if f.value(v) == 0) for f in self.facets
            ]
        self.incidence: tuple[frozenset[int], ...] = tuple(incidence)
        if dim is None:
            dim = -1 if not self.vertices else ambient_dim - len(self.equations)
        self.dim = dim

    def __repr__(self) -> str:
        return (
            f"Polytope(dim={self.dim}, ambient_dim={self.ambient_dim}, "
            f"vertices={len(self.vertices)}, facets={len(self.facets)})"
        )

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    @cached_property
    def vertex_set(self) -> frozenset[RationalVector]:
        return frozenset(self.vertices)

    def integer_vertices(self) -> tuple[LatticeVector, ...]:
        if not self.is_integral:
            raise ValueError("polytope has non-integral vertices")
        return tuple(tuple(int(x) for x in v) for v in self.vertices)

    def contains(self, x: Sequence) -> bool:
        return all(e.value(x) == 0 for e in self.equations) and all(f.value(x) >= 0 for f in self.facets)

    def interior_contains(self, x: Sequence) -> bool:
        """Membership in the relative interior."""
        return all(e.value(x) == 0 for e in self.equations) and all(f.value(x) > 0 for f in self.facets)

    @cached_property
    def face_lattice(self) -> FaceLattice:
        return face_lattice(self)

    @cached_property
    def fingerprint(self) -> str:
        """Short content hash, used to tie complexes to their reference polytope."""
        payload = json.dumps(polytope_to_json(self, with_id=False), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _affine_span(points: Sequence[RationalVector]):
    """Return (dimension, pivot coordinates, equations) of the affine span."""
    n = len(points[0])
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    pivots = pivot_columns(diffs) if diffs else []
    k = len(pivots)
    equations: list[Facet] = []
    if k < n:
        if diffs:
            normals = kernel_basis([clear_denominators(d)[0] for d in diffs], n)
        else:
            normals = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        for normal in normals:
            normal = primitive(normal)
            equations.append(Facet(normal, -dot(normal, base)))
    return k, pivots, equations


def _full_dim_hull(points: Sequence[RationalVector]):
    """Facets of the hull of full-dimensional points, as (normal, offset) pairs."""
    n = len(points[0])
    centroid = tuple(sum(p[i] for p in points) / len(points) for i in range(n))
    order = sorted(
        range(len(points)),
        key=lambda i: (-sum((a - c) ** 2 for a, c in zip(points[i], centroid)), i),
    )
    rows = []
    for i in order:
        scaled, k = clear_denominators(points[i])
        rows.append(scaled + (k,))
    facets = []
    for ray in extreme_rays(rows, n + 1):
        normal, b = ray[:n], ray[n]
        if not any(normal):
            continue
        g = math.gcd(*normal)
        facets.append(Facet(tuple(x // g for x in normal), Fraction(b, g)))
    return facets


def convex_hull(points: Iterable[Sequence], ambient_dim: Optional[int] = None) -> Polytope:
    """Convex hull of a finite point set.

    Vertices keep the order of their first appearance in ``points``; facets are
    sorted lexicographically by (normal, offset).  Lower-dimensional hulls are
    supported and record the equations of their affine span.
    """
    pts: list[RationalVector] = []
    seen = set()
    for p in points:
        fp = _frac_vec(p)
        if fp not in seen:
            seen.add(fp)
            pts.append(fp)
    if not pts:
        if ambient_dim is None:
            raise ValueError("empty point set needs an explicit ambient dimension")
        return Polytope(ambient_dim, (), (), dim=-1)
    n = len(pts[0])
    if ambient_dim is not None and ambient_dim != n:
        raise DimensionMismatch(f"points have dimension {n}, expected {ambient_dim}")
    k, pivots, equations = _affine_span(pts)
    if k == 0:
        return Polytope(n, pts[:1], (), equations, dim=0)
    if k == n:
        facets = _full_dim_hull(pts)
    else:
        projected = [tuple(p[c] for c in pivots) for p in pts]
        facets = []
        for f in _full_dim_hull(projected):
            normal = [0] * n
            for c, a in zip(pivots, f.normal):
                normal[c] = a
            facets.append(Facet(tuple(normal), f.offset))
    facets.sort(key=lambda f: (f.normal, f.offset))
    incidence = [frozenset(i for i, p in enumerate(pts) if f.value(p) == 0) for f in facets]
    # vertices: points whose tight facets cut out a single point
    vertex_ids = []
    eq_normals = [e.normal for e in equations]
    for i in range(len(pts)):
        tight = [facets[j].normal for j in range(len(facets)) if i in incidence[j]]
        if rank(tight + eq_normals) == n:
            vertex_ids.append(i)
    verts = [pts[i] for i in vertex_ids]
    remap = {old: new for new, old in enumerate(vertex_ids)}
    incidence = [frozenset(remap[i] for i in inc if i in remap) for inc in incidence]
    return Polytope(n, verts, facets, equations, incidence, dim=k)


def polytope_from_inequalities(
    normals: Sequence[Sequence], offsets: Sequence, ambient_dim: Optional[int] = None
) -> Polytope:
    """Polytope ``{x : <normal_i, x> + offset_i >= 0}``.

    Raises :class:`Unbounded` if the region is unbounded; returns an empty
    polytope if it is empty.
    """
    n = ambient_dim if ambient_dim is not None else len(normals[0])
    rows = []
    for a, b in zip(normals, offsets):
        vec, _ = clear_denominators(_frac_vec(tuple(a) + (b,)))
        rows.append(vec)
    rows.append(tuple([0] * n + [1]))
    try:
        rays = extreme_rays(rows, n + 1)
    except ValueError:
        # a lineality space means a line sits inside the region (or it is empty)
        if _is_empty_region(normals, offsets, n):
            return Polytope(n, (), (), dim=-1)
        raise Unbounded("inequalities define an unbounded region")
    bounded = [r for r in rays if r[n] != 0]
    if not bounded:
        return Polytope(n, (), (), dim=-1)
    if len(bounded) < len(rays):
        raise Unbounded("inequalities define an unbounded region")
    verts = [tuple(Fraction(x, r[n]) for x in r[:n]) for r in bounded]
    verts.sort()
    return convex_hull(verts, n)


def _is_empty_region(normals, offsets, n) -> bool:
    # Fourier-Motzkin would be overkill; fall back to checking for a feasible
    # vertex of the homogenized cone restricted to the span of the normals.
    span_rows = [tuple(Fraction(x) for x in a) for a in normals]
    pivots = pivot_columns(span_rows)
    if not pivots:
        return any(Fraction(b) < 0 for b in offsets)
    # project onto coordinates spanned by the normals: a lineality direction
    # does not affect feasibility
    sub_normals = [tuple(a[c] for c in pivots) for a in normals]
    try:
        p = polytope_from_inequalities(sub_normals, offsets, len(pivots))
    except Unbounded:
        return False
    return p.is_empty


def face_lattice(p: Polytope) -> FaceLattice:
    """Enumerate all faces as intersections of facet vertex sets."""
    nv = len(p.vertices)
    all_verts = frozenset(range(nv))
    if p.is_empty:
        return FaceLattice(p, [Face(0, -1, frozenset(), frozenset())])
    vertex_sets = {all_verts, frozenset()}
    frontier = set(p.incidence)
    while frontier:
        vertex_sets |= frontier
        nxt = set()
        for s in frontier:
            for inc in p.incidence:
                t = s & inc
                if t not in vertex_sets:
                    nxt.add(t)
        frontier = nxt
    eq_normals = [e.normal for e in p.equations]
    faces = []
    for s in vertex_sets:
        tight = frozenset(j for j, inc in enumerate(p.incidence) if s <= inc)
        if not s:
            d = -1
        elif s == all_verts:
            d = p.dim
        else:
            d = p.ambient_dim - rank([p.facets[j].normal for j in tight] + eq_normals)
        faces.append((d, tuple(sorted(s)), tight))
    faces.sort(key=lambda t: (t[0], t[1]))
    return FaceLattice(
        p, [Face(i, d, tight, frozenset(vs)) for i, (d, vs, tight) in enumerate(faces)]
    )


def fvector(faces: Iterable[Face], ambient_dim: int) -> tuple[int, ...]:
    """Face counts for dimensions -1, 0, ..., ambient_dim."""
    counts = [0] * (ambient_dim + 2)
    for f in faces:
        counts[f.dim + 1] += 1
    return tuple(counts)


def _check_origin_interior(p: Polytope) -> None:
    if not p.is_full_dimensional:
        raise NotFullDimensional(f"polytope has dimension {p.dim} in ambient dimension {p.ambient_dim}")
    if any(f.offset <= 0 for f in p.facets):
        raise OriginNotInterior("0 is not an interior point")


def polar_dual(p: Polytope) -> Polytope:
    """``{y : <y, x> >= -1 for all x in p}``.

    Vertex ``i`` of the result is dual to facet ``i`` of ``p`` and facet ``j``
    of the result is dual to vertex ``j`` of ``p``, so face duality is a pure
    index operation.
    """
    cached = p.__dict__.get("_polar_dual")
    if cached is not None:
        return cached
    _check_origin_interior(p)
    verts = [tuple(Fraction(a) / f.offset for a in f.normal) for f in p.facets]
    facets = []
    for v in p.vertices:
        scaled, k = clear_denominators(v)
        g = math.gcd(*scaled, k)
        facets.append(Facet(tuple(x // g for x in scaled), Fraction(k, g)))
    incidence = [frozenset(i for i, inc in enumerate(p.incidence) if j in inc) for j in range(len(p.vertices))]
    q = Polytope(p.ambient_dim, verts, facets, (), incidence, dim=p.ambient_dim)
    # the double dual is p itself; caching both directions keeps face objects shared
    p._polar_dual = q
    q._polar_dual = p
    return q


def dual_face(p: Polytope, f: Face, dual: Optional[Polytope] = None) -> Face:
    """The face of ``polar_dual(p)`` dual to ``f`` (inclusion reversing)."""
    _check_origin_interior(p)
    q = dual if dual is not None else polar_dual(p)
    g = q.face_lattice.by_vertices(f.facets)
    if g is None or g.facets != f.vertices:
        raise ValueError("face does not belong to the given polytope")
    return g


def lattice_points(p: Polytope) -> tuple[LatticeVector, ...]:
    """All integer points of ``p``, sorted lexicographically."""
    if p.is_empty:
        return ()
    n = p.ambient_dim
    lo = [math.ceil(min(v[i] for v in p.vertices)) for i in range(n)]
    hi = [math.floor(max(v[i] for v in p.vertices)) for i in range(n)]
    cons = []
    for f in list(p.facets):
        vec, _ = clear_denominators(_frac_vec(f.normal + (f.offset,)))
        cons.append((vec[:n], vec[n], False))
    for e in p.equations:
        vec, _ = clear_denominators(_frac_vec(e.normal + (e.offset,)))
        cons.append((vec[:n], vec[n], True))
    out = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        ok = True
        for a, b, is_eq in cons:
            val = dot(a, x) + b
            if val < 0 or (is_eq and val != 0):
                ok = False
                break
        if ok:
            out.append(tuple(x))
    return tuple(out)


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch("Minkowski summands live in different dimensions")
    if p.is_empty or q.is_empty:
        return Polytope(p.ambient_dim, (), (), dim=-1)
    sums = sorted({tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices})
    return convex_hull(sums, p.ambient_dim)


def is_reflexive(p: Polytope) -> bool:
    if not p.is_full_dimensional or not p.is_integral:
        return False
    if any(f.offset <= 0 for f in p.facets):
        return False
    return polar_dual(p).is_integral


def translate(p: Polytope, shift: Sequence) -> Polytope:
    return convex_hull([tuple(a + b for a, b in zip(v, shift)) for v in p.vertices], p.ambient_dim)


def barycenter(points: Sequence[Sequence]) -> RationalVector:
    n = len(points[0])
    return tuple(sum(Fraction(p[i]) for p in points) / len(points) for i in range(n))


# ---------------------------------------------------------------------------
# JSON


def polytope_to_json(p: Polytope, with_id: bool = True) -> dict:
    data = {
        "ambientDim": p.ambient_dim,
        "dim": p.dim,
        "vertices": [[_fmt(x) for x in v] for v in p.vertices],
        "facets": [{"normal": list(f.normal), "offset": _fmt(f.offset)} for f in p.facets],
        "equations": [{"normal": list(e.normal), "offset": _fmt(e.offset)} for e in p.equations],
    }
    if with_id:
        data["id"] = p.fingerprint
    return data


def polytope_from_json(data: dict) -> Polytope:
    n = int(data["ambientDim"])
    verts = [tuple(Fraction(x) for x in v) for v in data["vertices"]]
    facets = [Facet(tuple(int(a) for a in f["normal"]), Fraction(f["offset"])) for f in data["facets"]]
    eqs = [Facet(tuple(int(a) for a in e["normal"]), Fraction(e["offset"])) for e in data.get("equations", [])]
    return Polytope(n, verts, facets, eqs, dim=int(data["dim"]))


def face_lattice_to_json(lattice: FaceLattice) -> dict:
    return {
        "polytope": lattice.polytope.fingerprint,
        "faces": [
            {"dim": f.dim, "facets": sorted(f.facets), "vertices": sorted(f.vertices)} for f in lattice.faces
        ],
        "fvector": list(lattice.fvector()),
    }
