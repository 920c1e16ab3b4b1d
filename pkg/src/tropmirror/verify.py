"""Acceptance checks on the three reference inputs plus randomized property checks.

Each check yields :class:`Check` records; ``run_suite`` groups them by
criterion number.  The expected values below are frozen golden data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .deformation import pt1_basis
from .mirror import (
    MirrorResult,
    canonical_degeneration,
    groebner_cone,
    mirror_map_face,
    nabla_dual_from_hull,
    nabla_from_cone,
    run_pipeline,
    tropical_faces_combinatorial,
    tropical_faces_prevariety,
)
from .monomials import MonomialIdeal
from .oracles import (
    candidate_box,
    hom_constraints,
    hom_dimension,
    random_point_sets,
    random_reflexive_samples,
    random_squarefree_ideals,
)
from .polytope import Polytope, convex_hull, fvector, is_reflexive, lattice_points, minkowski_sum, polar_dual
from .problem import Problem
from .srcomplex import ideal_to_complex, strata_subcomplex
from .toric import toric_from_rays

P4_RAYS = [(-1, -1, -1, -1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
P2_RAYS = [(-1, -1), (1, 0), (0, 1)]

K3_C_FVECTOR = (1, 5, 9, 6, 0, 0)
K3_C_FACETS = {(0, 2, 3), (1, 2, 3), (0, 2, 4), (1, 2, 4), (0, 3, 4), (1, 3, 4)}
K3_NABLA_DUAL_FVECTOR = (1, 10, 24, 25, 11, 1)
K3_COCOMPLEX_FVECTOR = (0, 0, 5, 9, 6, 1)
K3_TROPICAL_FVECTOR = (1, 6, 9, 5, 0, 0)
# vertices of nabla, one column each
K3_NABLA_MATRIX = (
    (1, 0, 1, 0, 1, -1, 0, 1, -1, -1, -1),
    (0, 1, 1, 0, 0, -1, 0, 0, -1, 0, -1),
    (0, 0, 0, 1, 1, -1, 0, 0, 0, -1, -1),
    (0, 0, 0, 0, 0, 0, 1, 1, -1, -1, -1),
)
K3_NABLA_VERTICES = tuple(tuple(row[k] for row in K3_NABLA_MATRIX) for k in range(11))
# facets of the tropical complex as column labels of the matrix above
K3_TROPICAL_FACETS = ((2, 4, 7), (2, 4, 8, 9), (2, 5, 7, 9), (4, 5, 7, 8), (5, 8, 9))

PROPERTY_SEED = 20240611


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] criterion {self.criterion}: {self.name}"
        return text + (f" ({self.detail})" if self.detail else "")


def k3_problem() -> Problem:
    T = toric_from_rays(P4_RAYS, var="x")
    return Problem(T, T.ideal([(1, 1, 0, 0, 0), (0, 0, 1, 1, 1)]))


def quintic_problem() -> Problem:
    T = toric_from_rays(P4_RAYS, var="x")
    return Problem(T, T.ideal([(1, 1, 1, 1, 1)]))


def elliptic_problem() -> Problem:
    T = toric_from_rays(P2_RAYS, var="x")
    return Problem(T, T.ideal([(1, 1, 1)]))


PROBLEMS: dict[str, Callable[[], Problem]] = {
    "k3": k3_problem,
    "quintic": quintic_problem,
    "elliptic": elliptic_problem,
}


@lru_cache(maxsize=None)
def pipeline(name: str) -> MirrorResult:
    prob = PROBLEMS[name]()
    return run_pipeline(prob.partition(), prob.toric)


def _ints(points: Iterable) -> set[tuple[int, ...]]:
    return {tuple(int(x) for x in p) for p in points}


def _face_coords(poly: Polytope, faces) -> set[frozenset]:
    return {frozenset(poly.vertices[i] for i in f.vertices) for f in faces}


# ---------------------------------------------------------------------------
# Criteria on the reference inputs


def check_k3_golden() -> Iterator[Check]:
    prob = k3_problem()
    R = pipeline("k3")
    C = ideal_to_complex(prob.ideal, prob.toric)
    facets = {tuple(sorted(f.vertices)) for f in C.maximal_faces()}
    yield Check(1, "K3 complex F-vector and facets", C.fvector == K3_C_FVECTOR and facets == K3_C_FACETS,
                f"F-vector {list(C.fvector)}")
    fv = R.nabla_dual.face_lattice.fvector()
    yield Check(1, "K3 hull F-vector", fv == K3_NABLA_DUAL_FVECTOR, f"F-vector {list(fv)}")
    cc = R.tropical_dual
    edges = sum(1 for f in cc.faces if f.dim == 1)
    yield Check(1, "K3 co-complex F-vector", cc.fvector == K3_COCOMPLEX_FVECTOR and edges == 5,
                f"F-vector {list(cc.fvector)}, {edges} faces of dim 1")
    tc = R.tropical
    expected = {frozenset(K3_NABLA_VERTICES[k] for k in f) for f in K3_TROPICAL_FACETS}
    got = _face_coords(tc.polytope, tc.maximal_faces())
    got = {frozenset(tuple(int(x) for x in v) for v in f) for f in got}
    yield Check(1, "K3 tropical complex F-vector and facets", tc.fvector == K3_TROPICAL_FVECTOR and got == expected,
                f"F-vector {list(tc.fvector)}")
    verts = _ints(R.nabla.vertices)
    yield Check(1, "K3 weight polytope vertices", verts == set(K3_NABLA_VERTICES), f"{len(verts)} vertices")


def check_quintic() -> Iterator[Check]:
    prob = quintic_problem()
    R = pipeline("quintic")
    T = prob.toric
    yield Check(2, "quintic hull equals Delta", R.nabla_dual.vertex_set == T.delta.vertex_set)
    yield Check(2, "quintic weight polytope equals the Fano simplex", R.nabla.vertex_set == T.fano.vertex_set)
    boundary = {f.vertices for f in R.nabla.face_lattice if f.dim < R.nabla.dim}
    yield Check(2, "quintic tropical complex is the boundary", {f.vertices for f in R.tropical.faces} == boundary)
    full = R.mirror_toric.ideal([tuple([1] * R.mirror_toric.nrays)])
    yield Check(2, "quintic mirror ideal is the product of all variables", R.mirror_ideal == full, str(R.mirror_ideal))
    boundary_points = {p for p in lattice_points(T.fano) if any(p)}
    supports = {p.alpha for g in R.family for p in g.perturbations}
    yield Check(2, "quintic family support is the boundary of the Fano simplex",
                set(R.xi) == boundary_points and supports == boundary_points, f"{len(supports)} points")


def check_identities(name: str) -> Iterator[Check]:
    R = pipeline(name)
    P = R.degeneration.partition
    yield Check(3, f"{name}: weight polytope is reflexive", is_reflexive(R.nabla))
    delta_sum = P.section_polytopes()[0]
    for q in P.section_polytopes()[1:]:
        delta_sum = minkowski_sum(delta_sum, q)
    yield Check(3, f"{name}: Delta is the sum of the section polytopes", delta_sum.vertex_set == R.toric.delta.vertex_set)
    nabla_sum = P.ray_polytopes()[0]
    for q in P.ray_polytopes()[1:]:
        nabla_sum = minkowski_sum(nabla_sum, q)
    yield Check(3, f"{name}: weight polytope is the sum of the ray polytopes", nabla_sum.vertex_set == R.nabla.vertex_set)


def check_h_equals_v(name: str) -> Iterator[Check]:
    R = pipeline(name)
    D = canonical_degeneration(R.degeneration.partition)
    by_hull = polar_dual(convex_hull(nabla_dual_from_hull(D).vertices))
    by_cone = nabla_from_cone(groebner_cone(D))
    yield Check(4, f"{name}: cone slice equals dual of the hull", by_hull.vertex_set == by_cone.vertex_set,
                f"{len(by_cone.vertices)} vertices")


def check_dual_tests(name: str) -> Iterator[Check]:
    R = pipeline(name)
    D = R.degeneration
    comb = tropical_faces_combinatorial(D, R.nabla_dual)
    prev = tropical_faces_prevariety(D, R.nabla_from_cone, nabla_dual=R.nabla_dual)
    yield Check(5, f"{name}: combinatorial and prevariety tests agree", comb == prev,
                f"{len(comb)} faces vs {len(prev)}")


def check_bijection(name: str) -> Iterator[Check]:
    R = pipeline(name)
    D = R.degeneration
    strata = strata_subcomplex(D.ideal, R.toric)
    # nonempty faces of the tropical complex correspond to proper faces of the co-complex
    domain = [g for g in R.tropical_dual.faces if g.dim < R.nabla_dual.dim]
    image = {g: mirror_map_face(D, R.nabla_dual, g) for g in domain}
    targets = [f for f in strata.faces if f.dim >= 0]
    ok = all(v is not None and v in strata for v in image.values())
    ok = ok and len(set(image.values())) == len(domain) and set(image.values()) == set(targets)
    if ok:
        for a in domain:
            for b in domain:
                # a, b are dual faces on the hull: a <= b there iff a* >= b* on the tropical side
                if (a.vertices <= b.vertices) != (image[a].vertices <= image[b].vertices):
                    ok = False
    yield Check(6, f"{name}: mirror map is an inclusion-reversing bijection onto the strata", ok,
                f"{len(domain)} faces onto {len(targets)}")
    mirror_strata = strata_subcomplex(R.mirror_ideal, R.mirror_toric)
    yield Check(6, f"{name}: strata of the mirror ideal equal the tropical complex",
                _face_coords(mirror_strata.polytope, mirror_strata.faces) == _face_coords(R.tropical.polytope, R.tropical.faces))


def check_round_trip() -> Iterator[Check]:
    R = pipeline("k3")
    back = run_pipeline(R.dual_partition(), R.mirror_toric, mirror_var="z")
    T = R.toric
    yield Check(7, "round trip recovers Delta and its dual",
                back.nabla.vertex_set == T.delta.vertex_set and back.nabla_dual.vertex_set == T.fano.vertex_set)
    index = {r: i for i, r in enumerate(T.rays)}
    relabel = [index.get(r) for r in back.mirror_toric.rays]
    ok = None not in relabel
    if ok:
        gens = []
        for g in back.mirror_ideal.generators:
            e = [0] * T.nrays
            for i, x in enumerate(g):
                e[relabel[i]] = x
            gens.append(e)
        ok = T.ideal(gens) == R.degeneration.ideal
    yield Check(7, "round trip recovers the special fiber ideal", ok, str(back.mirror_ideal))
    yield Check(7, "round trip recovers the deformation support", sorted(back.xi) == sorted(R.pt1.alphas()),
                f"{len(back.xi)} points")


# ---------------------------------------------------------------------------
# Randomized property checks


def euler_ok(poly: Polytope) -> bool:
    return sum((-1) ** (i - 1) * x for i, x in enumerate(poly.face_lattice.fvector())) == 0


def check_properties(samples: int = 50, seed: int = PROPERTY_SEED) -> Iterator[Check]:
    polys = random_reflexive_samples(samples, seed)
    bad = []
    for name, p in polys:
        fresh = convex_hull(polar_dual(p).vertices)
        if polar_dual(fresh).vertex_set != p.vertex_set:
            bad.append(name)
    yield Check(8, "polar duality is an involution on reflexive samples", not bad, f"{len(polys)} samples")

    lattices = [p for _, p in polys] + [polar_dual(p) for _, p in polys]
    for name in PROBLEMS:
        R = pipeline(name)
        lattices += [R.nabla, R.nabla_dual, R.toric.fano, R.toric.delta]
    failures = sum(1 for p in lattices if not euler_ok(p))
    yield Check(8, "Euler relation on computed face lattices", failures == 0, f"{len(lattices)} lattices")

    sound = True
    point_sets = random_point_sets(samples, seed)
    for pts in point_sets:
        hull = convex_hull(pts)
        inputs = {tuple(x for x in p) for p in pts}
        if not all(hull.contains(p) for p in pts):
            sound = False
        if not _ints(hull.vertices) <= inputs:
            sound = False
    yield Check(8, "convex hull soundness", sound, f"{len(point_sets)} point sets")

    ok, count = True, 0
    for rays in (P2_RAYS, [(-1, -1, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1)], [(1, 0), (0, 1), (-1, 0), (0, -1)]):
        T = toric_from_rays(rays)
        for I0 in random_squarefree_ideals(T, 8, seed):
            count += 1
            ok = ok and _basis_matches_oracle(I0, T)
    yield Check(8, "deformation bases match the brute-force Hom oracle", ok, f"{count} ideals")


def _basis_matches_oracle(I0: MonomialIdeal, T) -> bool:
    basis = pt1_basis(I0, T)
    alphas = basis.alphas()
    if len(set(alphas)) != len(alphas):
        return False
    expected = {a for a in candidate_box(I0, T) if any(a) and hom_dimension(a, I0, T) > 0}
    if set(alphas) != expected:
        return False
    for d in basis.directions:
        unknowns, rows = hom_constraints(d.alpha, I0, T)
        values = [1 if d.images[j] is not None else 0 for j in unknowns]
        if any(sum(r * v for r, v in zip(row, values)) for row in rows):
            return False
        if any(d.images[j] is not None and j not in unknowns for j in range(len(d.images))):
            return False
    return True


# ---------------------------------------------------------------------------


def suite_checks(suite: str) -> Iterator[Check]:
    if suite in ("k3", "all"):
        yield from check_k3_golden()
    if suite in ("quintic", "all"):
        yield from check_quintic()
    for name in ("k3", "quintic", "elliptic"):
        if suite in (name, "all"):
            yield from check_identities(name)
            yield from check_h_equals_v(name)
            yield from check_dual_tests(name)
            yield from check_bijection(name)
    if suite in ("k3", "all"):
        yield from check_round_trip()
    if suite in ("properties", "all"):
        yield from check_properties()


SUITES = ("k3", "quintic", "elliptic", "properties", "all")


def run_suite(suite: str) -> list[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return list(suite_checks(suite))
