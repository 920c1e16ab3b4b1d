"""Polyhedral complexes attached to monomial ideals.

An :class:`EmbeddedComplex` is a set of faces of a reference polytope closed
under taking subfaces; a :class:`CoComplex` is closed under taking
superfaces.  Polar duality exchanges the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import NotEquidimensional, NotReduced, SchemaError, SphereCheckFailed
from .monomials import MonomialIdeal, minimal_transversals, squarefree
from .polytope import Face, Polytope, fvector, polar_dual, polytope_from_json, polytope_to_json
from .toric import ToricData


def _format_braces(values: Iterable) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


class _FaceSet:
    kind = "faces"

    def __init__(self, polytope: Polytope, faces: Iterable[Face]):
        self.polytope = polytope
        lattice = polytope.face_lattice
        faces = list(faces)
        for f in faces:
            if f.index >= len(lattice) or lattice.faces[f.index] != f:
                raise ValueError("face does not belong to the reference polytope")
        idx = sorted({f.index for f in faces})
        self.faces: tuple[Face, ...] = tuple(lattice.faces[i] for i in idx)
        self._check_closure()

    def _check_closure(self) -> None:
        raise NotImplementedError

    def __iter__(self):
        return iter(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __contains__(self, face: Face) -> bool:
        return face in self.faces

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self.polytope.fingerprint == other.polytope.fingerprint
            and self.vertex_sets() == other.vertex_sets()
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.polytope.fingerprint, self.vertex_sets()))

    def vertex_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(f.vertices for f in self.faces)

    @property
    def fvector(self) -> tuple[int, ...]:
        return fvector(self.faces, self.polytope.ambient_dim)

    def face_points(self, face: Face) -> list[tuple]:
        return [self.polytope.vertices[i] for i in sorted(face.vertices)]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "polytope": polytope_to_json(self.polytope),
            "faces": sorted(sorted(f.vertices) for f in self.faces),
            "fvector": list(self.fvector),
        }


class EmbeddedComplex(_FaceSet):
    """Subcomplex of the boundary complex of a polytope."""

    kind = "complex"

    def _check_closure(self) -> None:
        have = self.vertex_sets()
        lattice = self.polytope.face_lattice
        for f in self.faces:
            for g in lattice.subfaces(f):
                if g.vertices not in have:
                    raise ValueError("face set is not closed under subfaces")

    @property
    def dim(self) -> int:
        return max((f.dim for f in self.faces), default=-1)

    def maximal_faces(self) -> list[Face]:
        return [f for f in self.faces if not any(f.vertices < g.vertices for g in self.faces)]

    def describe(self) -> str:
        lines = [f"complex of dim {self.dim} embedded in dim {self.polytope.ambient_dim} (printing facets)"]
        for f in self.maximal_faces():
            lines.append("  " + _format_braces(sorted(f.vertices)))
        lines.append("F-vector " + _format_braces(self.fvector))
        return "\n".join(lines)


class CoComplex(_FaceSet):
    """Faces of a polytope closed under passing to larger faces."""

    kind = "cocomplex"

    def _check_closure(self) -> None:
        have = self.vertex_sets()
        lattice = self.polytope.face_lattice
        for f in self.faces:
            for g in lattice.superfaces(f):
                if g.vertices not in have:
                    raise ValueError("face set is not closed under superfaces")

    @property
    def dim(self) -> int:
        """Dimension of the smallest faces."""
        return min((f.dim for f in self.faces), default=-1)

    def minimal_faces(self) -> list[Face]:
        return [f for f in self.faces if not any(g.vertices < f.vertices for g in self.faces)]

    def describe(self) -> str:
        lines = [f"co-complex of dim {self.dim} embedded in dim {self.polytope.ambient_dim} (printing minimal faces)"]
        for f in self.minimal_faces():
            lines.append("  " + _format_braces(sorted(f.vertices)))
        lines.append("F-vector " + _format_braces(self.fvector))
        return "\n".join(lines)


def complex_from_json(data: dict) -> EmbeddedComplex | CoComplex:
    try:
        kind = data["kind"]
        poly = polytope_from_json(data["polytope"])
        wanted = [frozenset(f) for f in data["faces"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed complex: {exc}") from exc
    cls = {"complex": EmbeddedComplex, "cocomplex": CoComplex}.get(kind)
    if cls is None:
        raise SchemaError(f"unknown complex kind {kind!r}")
    faces = []
    for w in wanted:
        f = poly.face_lattice.by_vertices(w)
        if f is None:
            raise SchemaError(f"{sorted(w)} is not a face of the polytope")
        faces.append(f)
    try:
        return cls(poly, faces)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _ray_monomial(face: Face, nrays: int) -> tuple[int, ...]:
    return squarefree(face.vertices, nrays)


def ideal_to_complex(ideal: MonomialIdeal, T: ToricData) -> EmbeddedComplex:
    """Faces ``F`` of the Fano polytope whose ray monomial is not in the ideal."""
    if not ideal.is_reduced:
        raise NotReduced("Stanley-Reisner complexes need a squarefree ideal")
    faces = [f for f in T.fano.face_lattice if not ideal.contains(_ray_monomial(f, T.nrays))]
    return EmbeddedComplex(T.fano, faces)


def complex_to_ideal(c: EmbeddedComplex, T: ToricData) -> MonomialIdeal:
    """Squarefree ideal generated by the minimal non-faces of ``c``.

    The maximal faces of ``c`` determine it: a ray set is a non-face exactly
    when it meets the complement of every maximal face.
    """
    everything = frozenset(range(T.nrays))
    family = [everything - f.vertices for f in c.maximal_faces()]
    return T.ideal(squarefree(t, T.nrays) for t in minimal_transversals(family))


def strata_subcomplex(ideal: MonomialIdeal, T: ToricData) -> EmbeddedComplex:
    """Faces of the dual polytope whose torus orbit lies in ``V(ideal)``.

    The orbit of a face ``G`` is cut out by the rays dual to ``G``; it lies in
    ``V(ideal)`` iff every generator involves one of those rays.
    """
    supports = ideal.supports()
    faces = [g for g in T.delta.face_lattice if all(s & g.facets for s in supports)]
    return EmbeddedComplex(T.delta, faces)


def dualize(c: EmbeddedComplex | CoComplex) -> CoComplex | EmbeddedComplex:
    """Apply polar duality face by face."""
    q = polar_dual(c.polytope)
    image = [q.face_lattice.by_vertices(f.facets) for f in c.faces]
    if isinstance(c, EmbeddedComplex):
        return CoComplex(q, image)
    return EmbeddedComplex(q, image)


@dataclass
class SphereReport:
    """Necessary conditions for a complex to be a combinatorial sphere."""

    dim: int
    euler_characteristic: int
    expected_euler: int
    pseudomanifold: bool
    connected: bool
    links_connected: bool
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _connected(nodes: list, edges: Iterable[tuple]) -> bool:
    if len(nodes) <= 1:
        return True
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in nodes}) == 1


def sphere_proxy_check(c: EmbeddedComplex, strict: bool = False) -> SphereReport:
    """Check Euler characteristic, pseudomanifold property and connectivity.

    These are necessary conditions only; passing does not prove that ``c``
    is homeomorphic to a sphere.  With ``strict`` a failure raises
    :class:`SphereCheckFailed`.
    """
    maximal = c.maximal_faces()
    dims = {f.dim for f in maximal}
    if len(dims) > 1:
        raise NotEquidimensional(f"maximal faces have dimensions {sorted(dims)}")
    d = c.dim
    euler = sum((-1) ** f.dim for f in c.faces if f.dim >= 0)
    expected = 1 + (-1) ** d
    by_dim: dict[int, list[Face]] = {}
    for f in c.faces:
        by_dim.setdefault(f.dim, []).append(f)
    top = by_dim.get(d, [])
    ridges = by_dim.get(d - 1, [])
    pseudo = bool(top) and all(sum(1 for t in top if r.vertices <= t.vertices) == 2 for r in ridges)
    vertices = [next(iter(f.vertices)) for f in by_dim.get(0, [])]
    edges = [tuple(f.vertices) for f in by_dim.get(1, [])]
    connected = d < 1 or _connected(vertices, edges)
    links = True
    if d >= 2:
        two_faces = by_dim.get(2, [])
        for v in vertices:
            star_edges = [e for e in by_dim.get(1, []) if v in e.vertices]
            links_edges = []
            for t in two_faces:
                if v in t.vertices:
                    inside = [e.index for e in star_edges if e.vertices <= t.vertices]
                    links_edges += [(inside[0], b) for b in inside[1:]]
            if not _connected([e.index for e in star_edges], links_edges):
                links = False
                break
    report = SphereReport(d, euler, expected, pseudo, connected, links)
    if d < 0:
        report.failures.append("complex has no vertices")
    if euler != expected:
        report.failures.append(f"Euler characteristic {euler}, expected {expected}")
    if not pseudo:
        report.failures.append("not a pseudomanifold")
    if not connected:
        report.failures.append("not connected")
    if not links:
        report.failures.append("some vertex link is disconnected")
    if strict and report.failures:
        raise SphereCheckFailed("; ".join(report.failures))
    return report


def complexes_equal_up_to_relabeling(a: Optional[EmbeddedComplex], b: Optional[EmbeddedComplex]) -> bool:
    """Compare two complexes by the coordinates of their faces."""
    if a is None or b is None:
        return a is b

    def coords(c):
        return frozenset(frozenset(c.polytope.vertices[i] for i in f.vertices) for f in c.faces)

    return coords(a) == coords(b)
