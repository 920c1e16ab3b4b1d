"""The tropical mirror pipeline for complete intersections given by nef partitions.

Steps, in order: deformation basis of the special fiber, its convex hull
(the dual of the weight polytope), detection of the tropical faces, polar
duality, the mirror special fiber ideal, the support of the mirror
deformation and finally the first-order mirror family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence, Union

from .deformation import PT1Basis, hom_from_point, pt1_basis
from .errors import (
    ConsistencyError,
    EmptySupport,
    FormsDisagree,
    InvalidNefPartition,
    NoCartierMultiple,
    NotEquidimensional,
    NotFaceOfDelta,
    PipelineError,
    PreconditionError,
    TropicalTestsDisagree,
    TropMirrorError,
    Unbounded,
    UnboundedSlice,
)
from .lattice import dot, solve_rational
from .monomials import Exponent, MonomialIdeal, format_monomial, intersect, prime_ideal, squarefree
from .polytope import (
    Face,
    Polytope,
    barycenter,
    convex_hull,
    lattice_points,
    minkowski_sum,
    polar_dual,
    polytope_to_json,
    polytope_from_inequalities,
)
from .srcomplex import CoComplex, EmbeddedComplex, dualize, sphere_proxy_check, strata_subcomplex
from .toric import ToricData, divisor_polytope, is_cartier, is_nef, sections_basis, toric_from_fano

Point = tuple[int, ...]


# ---------------------------------------------------------------------------
# Nef partitions and the canonical degeneration


class NefPartition:
    """A partition of the rays whose block divisors are Cartier and nef."""

    def __init__(self, T: ToricData, blocks: Sequence[Sequence[int]]):
        self.toric = T
        self.blocks: tuple[frozenset[int], ...] = tuple(frozenset(b) for b in blocks)
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise InvalidNefPartition("empty block")
            if b & seen:
                raise InvalidNefPartition("blocks are not disjoint")
            if not all(0 <= r < T.nrays for r in b):
                raise InvalidNefPartition(f"block {sorted(b)} has an unknown ray index")
            seen |= b
        if seen != set(range(T.nrays)):
            raise InvalidNefPartition("blocks do not cover every ray")
        for d in self.divisors:
            if not is_cartier(T, d):
                raise InvalidNefPartition(f"block divisor {list(d)} is not Cartier")
            if not is_nef(T, d):
                raise InvalidNefPartition(f"block divisor {list(d)} is not nef")

    def __repr__(self) -> str:
        return f"NefPartition({[sorted(b) for b in self.blocks]})"

    @property
    def divisors(self) -> tuple[Exponent, ...]:
        return tuple(squarefree(b, self.toric.nrays) for b in self.blocks)

    @property
    def generators(self) -> tuple[Exponent, ...]:
        """The monomials ``m_j``; they coincide with the block divisors."""
        return self.divisors

    def ideal(self) -> MonomialIdeal:
        return self.toric.ideal(self.generators)

    def section_polytopes(self) -> list[Polytope]:
        return [divisor_polytope(self.toric, d) for d in self.divisors]

    def ray_polytopes(self) -> list[Polytope]:
        """``conv({0} and the rays of block j)`` in ``N``."""
        zero = tuple([0] * self.toric.n)
        return [convex_hull([zero] + [self.toric.rays[r] for r in sorted(b)]) for b in self.blocks]


def nef_partition_from_ideal(I0: MonomialIdeal, T: ToricData) -> NefPartition:
    """Read a nef partition off an ideal generated by disjoint ray products."""
    if not I0.is_reduced:
        raise InvalidNefPartition("ideal is not squarefree")
    return NefPartition(T, [sorted(s) for s in I0.supports()])


@dataclass(frozen=True)
class Degeneration:
    """``f_j = m_j + t * sum(c_{j,alpha} x^{m_j + A alpha})`` with symbolic coefficients."""

    partition: NefPartition
    supports: tuple[tuple[Point, ...], ...]

    @property
    def ideal(self) -> MonomialIdeal:
        return self.partition.ideal()

    def all_points(self) -> list[Point]:
        return sorted({a for s in self.supports for a in s})

    def monomial(self, j: int, alpha: Sequence[int]) -> Exponent:
        m = self.partition.generators[j]
        return tuple(a + b for a, b in zip(m, self.partition.toric.pairing(alpha)))

    def to_json(self) -> dict:
        T = self.partition.toric
        return {
            "ideal": [list(g) for g in self.partition.generators],
            "blocks": [sorted(b) for b in self.partition.blocks],
            "supports": [
                [{"alpha": list(a), "coefficient": f"c{j}_{k}", "monomial": format_monomial(self.monomial(j, a), T.var)}
                 for k, a in enumerate(s)]
                for j, s in enumerate(self.supports)
            ],
        }


def canonical_degeneration(P: NefPartition, T: Optional[ToricData] = None) -> Degeneration:
    T = T or P.toric
    I0 = P.ideal()
    supports = []
    for j, (m, poly) in enumerate(zip(P.generators, P.section_polytopes())):
        pts = []
        for alpha in lattice_points(poly):
            e = tuple(a + b for a, b in zip(m, T.pairing(alpha)))
            if not I0.contains(e):
                pts.append(alpha)
        if not pts:
            raise EmptySupport(f"block {j} has no section outside the special fiber ideal")
        supports.append(tuple(pts))
    return Degeneration(P, tuple(supports))


# ---------------------------------------------------------------------------
# The two routes to the weight polytope


@dataclass(frozen=True)
class GroebnerCone:
    """Cone ``{(w_t, w) : <alpha, w> + w_t >= 0 for all support points alpha}``."""

    ambient_dim: int
    inequalities: tuple[Point, ...]
    irredundant: tuple[Point, ...]

    def contains(self, w_t, w: Sequence) -> bool:
        return all(dot(a, w) + w_t >= 0 for a in self.irredundant)


def groebner_cone(D: Degeneration, T: Optional[ToricData] = None) -> GroebnerCone:
    n = D.partition.toric.n
    ineqs = tuple(D.all_points())
    try:
        poly = polytope_from_inequalities(ineqs, [1] * len(ineqs), n)
    except Unbounded as exc:
        raise UnboundedSlice("weight polytope is unbounded") from exc
    normals = {tuple(Fraction(a) / f.offset for a in f.normal) for f in poly.facets}
    irredundant = tuple(a for a in ineqs if tuple(Fraction(x) for x in a) in normals)
    return GroebnerCone(n, ineqs, irredundant)


def nabla_from_cone(C: GroebnerCone) -> Polytope:
    """Slice of the cone at ``w_t = 1``."""
    try:
        return polytope_from_inequalities(C.irredundant, [1] * len(C.irredundant), C.ambient_dim)
    except Unbounded as exc:
        raise UnboundedSlice("weight polytope is unbounded") from exc


def nabla_dual_from_hull(D: Degeneration) -> Polytope:
    return convex_hull(D.all_points(), D.partition.toric.n)


# ---------------------------------------------------------------------------
# Tropical faces


def _vertices_on(face: Face, poly: Polytope, points: Sequence[Sequence]) -> list:
    return [p for p in points if all(poly.facets[i].value(p) == 0 for i in face.facets)]


def mirror_map_face(D: Degeneration, nabla_dual: Polytope, face: Face) -> Optional[Face]:
    """The face ``sum_i (face & Delta_i)`` of ``Delta``, or None.

    None means some intersection is empty or the sum is not a face of Delta.
    """
    T = D.partition.toric
    sums: set[tuple] = {tuple([Fraction(0)] * T.n)}
    for block in D.partition.section_polytopes():
        part = _vertices_on(face, nabla_dual, block.vertices)
        if not part:
            return None
        sums = {tuple(a + b for a, b in zip(s, p)) for s in sums for p in part}
    delta = T.delta
    lattice = delta.face_lattice
    if not all(delta.contains(s) for s in sums):
        raise NotFaceOfDelta("Minkowski sum leaves Delta")
    target = lattice.face_of_points(sums)
    if all(delta.vertices[i] in sums for i in target.vertices):
        return target
    return None


def _check_blocks_inside(D: Degeneration, nabla_dual: Polytope) -> None:
    for block in D.partition.section_polytopes():
        if not all(nabla_dual.contains(v) for v in block.vertices):
            raise ConsistencyError("a section polytope is not contained in the deformation hull")


def _close_cocomplex(poly: Polytope, accepted: list[Face]) -> CoComplex:
    faces = list(accepted)
    if faces:
        faces.append(poly.face_lattice.top)
    have = {f.vertices for f in faces}
    for f in faces:
        for g in poly.face_lattice.superfaces(f):
            if g.vertices not in have:
                raise NotFaceOfDelta("accepted faces are not closed under superfaces")
    return CoComplex(poly, faces)


def tropical_faces_combinatorial(D: Degeneration, nabla_dual: Polytope, T: Optional[ToricData] = None) -> CoComplex:
    """Faces ``G`` of the hull mapping onto a face of the strata complex."""
    T = T or D.partition.toric
    _check_blocks_inside(D, nabla_dual)
    strata = strata_subcomplex(D.ideal, T)
    accepted = []
    for g in nabla_dual.face_lattice.proper_faces():
        target = mirror_map_face(D, nabla_dual, g)
        if target is not None and target in strata:
            accepted.append(g)
    return _close_cocomplex(nabla_dual, accepted)


def min_attained_twice(D: Degeneration, w: Sequence) -> bool:
    """Tropical prevariety test at weight ``(1, w)``.

    For block ``j`` the terms of ``f_j`` evaluate to 0 (for ``m_j``) and to
    ``1 + <alpha, w>`` (for the ``t``-perturbations) after subtracting the
    common ``m_j`` contribution.
    """
    for support in D.supports:
        values = [Fraction(0)] + [1 + dot(a, w) for a in support]
        low = min(values)
        if values.count(low) < 2:
            return False
    return True


def tropical_faces_prevariety(
    D: Degeneration, nabla: Polytope, T: Optional[ToricData] = None, nabla_dual: Optional[Polytope] = None
) -> CoComplex:
    """Faces of ``nabla`` whose barycenter lies on every tropical hypersurface, dualized."""
    nabla_dual = nabla_dual if nabla_dual is not None else polar_dual(nabla)
    accepted = []
    for f in nabla.face_lattice.proper_faces():
        w = barycenter([nabla.vertices[i] for i in sorted(f.vertices)])
        if not min_attained_twice(D, w):
            continue
        tight = frozenset(i for i, y in enumerate(nabla_dual.vertices) if dot(y, w) == -1)
        g = nabla_dual.face_lattice.by_vertices(tight)
        if g is None:
            raise TropicalTestsDisagree("dual of an accepted face is not a face of the hull")
        accepted.append(g)
    return _close_cocomplex(nabla_dual, accepted)


def transport(c: Union[EmbeddedComplex, CoComplex], target: Polytope) -> Union[EmbeddedComplex, CoComplex]:
    """Move a complex onto another polytope with the same vertex coordinates."""
    if target is c.polytope:
        return c
    index = {v: i for i, v in enumerate(target.vertices)}
    faces = []
    for f in c.faces:
        try:
            verts = {index[c.polytope.vertices[i]] for i in f.vertices}
        except KeyError as exc:
            raise ConsistencyError("polytopes have different vertices") from exc
        g = target.face_lattice.by_vertices(verts)
        if g is None:
            raise ConsistencyError("face does not exist on the target polytope")
        faces.append(g)
    return type(c)(target, faces)


def special_fiber_tropical_complex(cc: CoComplex, nabla: Optional[Polytope] = None, expected_dim: Optional[int] = None) -> EmbeddedComplex:
    tc = dualize(cc)
    if nabla is not None:
        tc = transport(tc, nabla)
    dims = {f.dim for f in tc.maximal_faces()}
    if len(dims) > 1:
        raise NotEquidimensional(f"tropical complex has maximal faces of dimensions {sorted(dims)}")
    if expected_dim is not None and tc.dim != expected_dim:
        raise NotEquidimensional(f"tropical complex has dimension {tc.dim}, expected {expected_dim}")
    sphere_proxy_check(tc, strict=True)
    return tc


# ---------------------------------------------------------------------------
# Mirror ideal, deformation support and family


def _mirror_ideal_by_cover(tc: EmbeddedComplex, T: ToricData) -> MonomialIdeal:
    """Minimal variable sets whose facets cover the support of ``tc``."""
    nabla = tc.polytope
    maximal = tc.maximal_faces()
    centers = [barycenter([nabla.vertices[i] for i in sorted(f.vertices)]) for f in maximal]
    # facet r covers face f iff f lies in facet r iff f's barycenter is tight on it
    covers = [
        frozenset(k for k, c in enumerate(centers) if nabla.facets[r].value(c) == 0)
        for r in range(len(nabla.facets))
    ]
    useful = [r for r in range(len(nabla.facets)) if covers[r]]
    everything = frozenset(range(len(maximal)))
    found: list[frozenset[int]] = []
    for size in range(len(useful) + 1):
        for combo in combinations(useful, size):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            covered = frozenset().union(*(covers[r] for r in combo)) if combo else frozenset()
            if covered == everything:
                found.append(s)
    return T.ideal(squarefree(s, T.nrays) for s in found)


def _mirror_ideal_by_primes(tc: EmbeddedComplex, T: ToricData) -> MonomialIdeal:
    """Intersection of the prime ideals of the facets through each maximal face."""
    result: Optional[MonomialIdeal] = None
    for f in tc.maximal_faces():
        p = prime_ideal(sorted(f.facets), T.nrays, T.var)
        result = p if result is None else intersect(result, p)
    if result is None:
        return T.ideal([tuple([0] * T.nrays)])
    return T.ideal(result.generators)


def mirror_ideal(tc: EmbeddedComplex, mirror_toric: ToricData) -> MonomialIdeal:
    """Mirror special fiber ideal, computed in two independent ways."""
    if tc.polytope.fingerprint != mirror_toric.delta.fingerprint:
        tc = transport(tc, mirror_toric.delta)
    dims = {f.dim for f in tc.maximal_faces()}
    if len(dims) > 1:
        raise NotEquidimensional("tropical complex is not equidimensional")
    by_cover = _mirror_ideal_by_cover(tc, mirror_toric)
    by_primes = _mirror_ideal_by_primes(tc, mirror_toric)
    if by_cover != by_primes:
        raise FormsDisagree(f"cover form {by_cover} differs from intersection form {by_primes}")
    return by_cover


def deformation_support_Xi(I0: MonomialIdeal, T: ToricData) -> list[Point]:
    """Lattice points on the faces of the Fano polytope dual to nonempty strata."""
    strata = strata_subcomplex(I0, T)
    fano = T.fano
    pts = lattice_points(fano)
    chosen: set[Point] = set()
    for f in strata.faces:
        if f.dim < 0:
            continue
        chosen.update(p for p in pts if all(fano.facets[i].value(p) == 0 for i in f.vertices))
    return sorted(chosen)


@dataclass(frozen=True)
class Promotion:
    """How a generator was moved into a Cartier class: ``base = m * multiplier``."""

    power: int
    multiplier: Exponent
    rule: str


@dataclass(frozen=True)
class Perturbation:
    alpha: Point
    coefficient: str
    image: Exponent


@dataclass(frozen=True)
class MirrorGenerator:
    generator: Exponent
    base: Exponent
    promotion: Promotion
    perturbations: tuple[Perturbation, ...]

    def describe(self, var: str = "y") -> str:
        terms = " + ".join(f"{p.coefficient}*{format_monomial(p.image, var)}" for p in self.perturbations)
        head = format_monomial(self.base, var)
        return f"{head} + s*({terms})" if terms else head

    def to_json(self, var: str = "y") -> dict:
        return {
            "generator": list(self.generator),
            "baseMonomial": list(self.base),
            "base": format_monomial(self.base, var),
            "promotion": {"power": self.promotion.power, "multiplier": list(self.promotion.multiplier), "rule": self.promotion.rule},
            "perturbations": [
                {"alpha": list(p.alpha), "coefficientSymbol": p.coefficient, "imageMonomial": list(p.image),
                 "image": format_monomial(p.image, var)}
                for p in self.perturbations
            ],
        }


def cartier_multiplier(m: Exponent, T: ToricData) -> int:
    """Least ``k > 0`` with ``k * m`` Cartier.

    Maximal cones are full-dimensional, so each local equation ``m_sigma`` is
    unique over Q and ``k`` is the lcm of their denominators.
    """
    k = 1
    for cone in T.max_cones:
        idx = sorted(cone)
        sol = solve_rational([T.rays[i] for i in idx], [-m[i] for i in idx])
        if sol is None:
            raise NoCartierMultiple(f"no multiple of {format_monomial(m, T.var)} is Cartier")
        for x in sol:
            k = k * x.denominator // gcd(k, x.denominator)
    return k


def promote_to_cartier(m: Exponent, T: ToricData) -> Promotion:
    """Smallest ``k`` with ``k [m]`` Cartier, represented as ``m * u``.

    ``u`` is the lexicographically first monomial in the class ``(k-1)[m]``
    other than ``m^(k-1)``; the power is used only when no such monomial exists.
    """
    k = cartier_multiplier(m, T)
    if k == 1:
        return Promotion(1, tuple([0] * T.nrays), "cartier")
    rest = tuple((k - 1) * x for x in m)
    mixed = sorted(u for u in sections_basis(T, None, rest) if u != rest)
    if mixed:
        return Promotion(k, mixed[0], "mixed monomial")
    return Promotion(k, rest, "power")


def mirror_family(
    I0m: MonomialIdeal, Xi: Sequence[Point], mirror_toric: ToricData
) -> tuple[list[MirrorGenerator], list[Exponent]]:
    """First-order family ``m + s * sum_alpha c_alpha phi_alpha(m)``.

    Returns the family and the generators left out because no multiple of
    their class is Cartier (they have no representative in the Picard-Cox
    ring).  If every generator is left out the family is undefined and
    :class:`NoCartierMultiple` is raised.

    The maps ``phi_alpha`` are evaluated on the ideal generated by the
    promoted generators, with values in ``S / I0m``.
    """
    if not I0m.is_reduced:
        raise PreconditionError("mirror ideal must be reduced")
    kept, promotions, excluded = [], [], []
    for m in I0m.generators:
        try:
            promotions.append(promote_to_cartier(m, mirror_toric))
            kept.append(m)
        except NoCartierMultiple:
            excluded.append(m)
    bases = [tuple(a + b for a, b in zip(m, p.multiplier)) for m, p in zip(kept, promotions)]
    picard_part = mirror_toric.ideal(bases)
    directions = {}
    for a in Xi:
        d = hom_from_point(a, picard_part, mirror_toric, modulo=I0m) if bases else None
        directions[a] = {} if d is None else dict(zip(picard_part.generators, d.images))
    family = []
    for j, (m, promo, base) in enumerate(zip(kept, promotions, bases)):
        terms = []
        for k, alpha in enumerate(Xi):
            image = directions[alpha].get(base)
            if image is not None:
                terms.append(Perturbation(tuple(alpha), f"c{j}_{k}", image))
        family.append(MirrorGenerator(m, base, promo, tuple(terms)))
    if I0m.generators and not family:
        raise NoCartierMultiple("no generator of the mirror ideal has a Cartier multiple")
    return family, excluded


# ---------------------------------------------------------------------------
# Full pipeline


@dataclass
class MirrorResult:
    toric: ToricData
    degeneration: Degeneration
    pt1: PT1Basis
    nabla: Polytope
    nabla_dual: Polytope
    nabla_from_cone: Polytope
    groebner: GroebnerCone
    tropical_dual: CoComplex
    tropical: EmbeddedComplex
    mirror_toric: ToricData
    mirror_ideal: MonomialIdeal
    xi: list[Point]
    family: list[MirrorGenerator]
    metadata: dict = field(default_factory=dict)

    def dual_partition(self) -> NefPartition:
        """Blocks of mirror rays: vertices of the hull lying in each section polytope."""
        blocks = []
        for poly in self.degeneration.partition.section_polytopes():
            blocks.append([i for i, v in enumerate(self.nabla_dual.vertices) if poly.contains(v)])
        return NefPartition(self.mirror_toric, blocks)

    def to_json(self) -> dict:
        var = self.mirror_toric.var
        return {
            "degeneration": self.degeneration.to_json(),
            "pt1": self.pt1.to_json(),
            "nablaDual": polytope_to_json(self.nabla_dual),
            "nabla": polytope_to_json(self.nabla),
            "tropicalComplexDual": self.tropical_dual.to_json(),
            "tropicalComplex": self.tropical.to_json(),
            "mirrorToric": self.mirror_toric.to_json(),
            "mirrorIdeal": {"generators": [list(g) for g in self.mirror_ideal.generators], "text": str(self.mirror_ideal)},
            "xi": [list(a) for a in self.xi],
            "family": [g.to_json(var) for g in self.family],
            "metadata": self.metadata,
        }


class _Step:
    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, TropMirrorError) and not isinstance(exc, PipelineError):
            raise PipelineError(self.name, exc) from exc
        return False


def run_pipeline(source: Union[MonomialIdeal, NefPartition], T: ToricData, mirror_var: str = "y") -> MirrorResult:
    """Run every step, wrapping failures with the name of the step."""
    with _Step("0 input"):
        P = source if isinstance(source, NefPartition) else nef_partition_from_ideal(source, T)
        I0 = P.ideal()
        strata = strata_subcomplex(I0, T)
        sphere_proxy_check(strata, strict=True)
        D = canonical_degeneration(P, T)
    with _Step("1 deformations"):
        basis = pt1_basis(I0, T)
        if sorted(basis.alphas()) != D.all_points():
            raise ConsistencyError("deformation basis differs from the degeneration supports")
    with _Step("2 hull"):
        nabla_dual = nabla_dual_from_hull(D)
        nabla = polar_dual(nabla_dual)
        cone = groebner_cone(D, T)
        from_cone = nabla_from_cone(cone)
        if from_cone.vertex_set != nabla.vertex_set:
            raise ConsistencyError("weight polytope from the cone differs from the dual of the hull")
    with _Step("3 tropical faces"):
        cc = tropical_faces_combinatorial(D, nabla_dual, T)
        check = tropical_faces_prevariety(D, from_cone, T, nabla_dual)
        if cc != check:
            raise TropicalTestsDisagree("combinatorial and prevariety tests select different faces")
    with _Step("4 dualize"):
        tc = special_fiber_tropical_complex(cc, expected_dim=T.n - len(P.blocks))
    with _Step("5 mirror ideal"):
        mirror_toric = toric_from_fano(nabla_dual, mirror_var)
        I0m = mirror_ideal(tc, mirror_toric)
    with _Step("6 mirror family"):
        xi = deformation_support_Xi(I0, T)
        family, excluded = mirror_family(I0m, xi, mirror_toric)
    return MirrorResult(
        toric=T,
        degeneration=D,
        pt1=basis,
        nabla=nabla,
        nabla_dual=nabla_dual,
        nabla_from_cone=from_cone,
        groebner=cone,
        tropical_dual=cc,
        tropical=tc,
        mirror_toric=mirror_toric,
        mirror_ideal=I0m,
        xi=xi,
        family=family,
        metadata={
            "promotions": [g.promotion.rule for g in family],
            "generatorsWithoutCartierMultiple": [list(m) for m in excluded],
            "mirrorRayOrder": "vertex order of the deformation hull",
        },
    )
