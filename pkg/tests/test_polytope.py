from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from tropmirror.errors import NotFullDimensional, OriginNotInterior
from tropmirror.lattice import rank
from tropmirror.oracles import CURATED_REFLEXIVE
from tropmirror.polytope import (
    barycenter,
    convex_hull,
    dual_face,
    extreme_rays,
    fvector,
    is_reflexive,
    lattice_points,
    minkowski_sum,
    polar_dual,
    polytope_from_inequalities,
    polytope_from_json,
    polytope_to_json,
)
from tropmirror.verify import pipeline

from strategies import point_sets

P2_ANTICANONICAL = [(2, -1), (-1, 2), (-1, -1)]
P4_FANO = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)]


def _ints(points):
    return {tuple(int(x) for x in p) for p in points}


def _euler(p) -> int:
    return sum((-1) ** (i - 1) * x for i, x in enumerate(p.face_lattice.fvector()))


def test_unit_square():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert p.face_lattice.fvector() == (1, 4, 4, 1)
    assert len(lattice_points(p)) == 4


def test_hull_of_lattice_points_is_the_triangle():
    triangle = convex_hull(P2_ANTICANONICAL)
    # brute force over the bounding box
    brute = [x for x in product(range(-1, 3), repeat=2) if triangle.contains(x)]
    assert len(brute) == 10
    assert set(lattice_points(triangle)) == set(brute)
    assert _ints(convex_hull(brute).vertices) == set(P2_ANTICANONICAL)


def test_interior_points_are_dropped():
    p = convex_hull([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0), (0, 1), (Fraction(1, 3), Fraction(1, 3))])
    assert _ints(p.vertices) == {(0, 0), (2, 0), (0, 2)}


def test_lower_dimensional_hull():
    seg = convex_hull([(0,), (5,)])
    assert len(lattice_points(seg)) == 6
    flat = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert flat.dim == 2 and flat.ambient_dim == 3
    assert flat.face_lattice.fvector() == (1, 3, 3, 1, 0)
    assert not flat.contains((0, 0, 1))


def test_polar_dual_examples():
    cross = convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert _ints(polar_dual(cross).vertices) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    delta = polar_dual(convex_hull(P4_FANO))
    assert (4, -1, -1, -1) in _ints(delta.vertices)
    for v in delta.vertices:
        assert all(sum(a * b for a, b in zip(v, r)) >= -1 for r in P4_FANO)
        assert sum(1 for r in P4_FANO if sum(a * b for a, b in zip(v, r)) == -1) == 4


def test_polar_dual_preconditions():
    with pytest.raises(OriginNotInterior):
        polar_dual(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    with pytest.raises(NotFullDimensional):
        polar_dual(convex_hull([(-1, 0), (1, 0)], 2))


def test_fvectors():
    assert convex_hull([(0, 0), (1, 0), (0, 1)]).face_lattice.fvector() == (1, 3, 3, 1)
    assert convex_hull(P4_FANO).face_lattice.fvector() == (1, 5, 10, 10, 5, 1)


def test_k3_hull_and_its_dual():
    R = pipeline("k3")
    assert R.nabla_dual.face_lattice.fvector() == (1, 10, 24, 25, 11, 1)
    nabla = polar_dual(R.nabla_dual)
    assert len(nabla.vertices) == 11
    assert nabla.face_lattice.fvector() == (1, 11, 25, 24, 10, 1)
    assert is_reflexive(nabla)
    vertices = nabla.face_lattice.by_dim(0)
    images = {dual_face(nabla, v) for v in vertices}
    assert len(images) == 11 and all(g.dim == 3 for g in images)
    facets = nabla.face_lattice.by_dim(3)
    assert {dual_face(nabla, f).dim for f in facets} == {0} and len(facets) == 10


def test_dual_face_of_square_vertex_is_opposite_edge():
    square = convex_hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    cross = polar_dual(square)
    v = next(f for f in square.face_lattice if f.dim == 0 and square.vertices[min(f.vertices)] == (1, 1))
    edge = dual_face(square, v)
    assert edge.dim == 1
    assert _ints(cross.vertices[i] for i in edge.vertices) == {(-1, 0), (0, -1)}


def test_dual_face_twice_is_identity_on_simplex():
    p = convex_hull(P4_FANO)
    q = polar_dual(p)
    for f in p.face_lattice:
        g = dual_face(p, f)
        assert f.dim + g.dim == p.dim - 1 or f.dim == -1 or g.dim == -1
        assert dual_face(q, g, p) == f


@pytest.mark.parametrize("name", sorted(CURATED_REFLEXIVE))
def test_dual_face_reverses_inclusions(name):
    p = convex_hull(CURATED_REFLEXIVE[name])
    faces = list(p.face_lattice)
    image = {f: dual_face(p, f) for f in faces}
    for f in faces:
        if 0 <= f.dim < p.dim:
            assert f.dim + image[f].dim == p.dim - 1
        for g in faces:
            assert (f.vertices <= g.vertices) == (image[g].vertices <= image[f].vertices)


def test_minkowski_examples():
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    origin = convex_hull([(0, 0)], 2)
    assert minkowski_sum(square, origin).vertex_set == square.vertex_set
    e1 = convex_hull([(0, 0), (1, 0)])
    e2 = convex_hull([(0, 0), (0, 1)])
    assert minkowski_sum(e1, e2).vertex_set == square.vertex_set


def test_reflexive_examples():
    assert is_reflexive(convex_hull([(1, 0), (0, 1), (-1, -1)]))
    assert not is_reflexive(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert not is_reflexive(convex_hull([(2, 0), (0, 2), (-2, -2)]))


def test_inequalities_and_extreme_rays():
    box = polytope_from_inequalities([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 1, 1, 1])
    assert _ints(box.vertices) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    rays = extreme_rays([(1, 0), (0, 1)], 2)
    assert sorted(rays) == [(0, 1), (1, 0)]


def test_json_round_trip():
    p = convex_hull(P2_ANTICANONICAL)
    q = polytope_from_json(polytope_to_json(p))
    assert q.vertex_set == p.vertex_set and q.fingerprint == p.fingerprint
    assert q.face_lattice.fvector() == p.face_lattice.fvector()


def test_face_of_points():
    p = convex_hull([(0, 0), (2, 0), (0, 2)])
    f = p.face_lattice.face_of_points([(1, 0)])
    assert f.dim == 1
    assert p.face_lattice.face_of_points([barycenter(p.vertices)]) == p.face_lattice.top


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(lambda d: point_sets(d, d + 1)))
def test_hull_matches_scipy_oracle(points):
    dim = len(points[0])
    assume(rank([tuple(a - b for a, b in zip(p, points[0])) for p in points]) == dim)
    p = convex_hull(points)
    oracle = ConvexHull(np.array(points, dtype=float))
    assert _ints(p.vertices) == {tuple(points[i]) for i in oracle.vertices}
    assert all(p.contains(x) for x in points)
    assert abs(float(oracle.volume)) > 0


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([1, 2, 3, 4]).flatmap(lambda d: point_sets(d, 1, 8)))
def test_hull_soundness_and_euler(points):
    p = convex_hull(points)
    assert all(p.contains(x) for x in points)
    assert _ints(p.vertices) <= set(points)
    for f in p.facets:
        assert all(f.value(x) >= 0 for x in points)
    full = fvector(p.face_lattice.faces, p.ambient_dim)
    # Euler over dims -1..dim of the polytope itself
    assert sum((-1) ** (i - 1) * x for i, x in enumerate(full[: p.dim + 2])) == 0


@settings(max_examples=40, deadline=None)
@given(point_sets(2, 1, 5), point_sets(2, 1, 5), point_sets(2, 1, 5))
def test_minkowski_commutative_and_associative(a, b, c):
    P, Q, S = convex_hull(a, 2), convex_hull(b, 2), convex_hull(c, 2)
    assert minkowski_sum(P, Q).vertex_set == minkowski_sum(Q, P).vertex_set
    left = minkowski_sum(minkowski_sum(P, Q), S)
    right = minkowski_sum(P, minkowski_sum(Q, S))
    assert left.vertex_set == right.vertex_set


@pytest.mark.parametrize("name", sorted(CURATED_REFLEXIVE))
def test_curated_polytopes_are_reflexive_and_dual_is_involution(name):
    p = convex_hull(CURATED_REFLEXIVE[name])
    assert is_reflexive(p)
    fresh = convex_hull(polar_dual(p).vertices)
    assert polar_dual(fresh).vertex_set == p.vertex_set
    assert _euler(p) == 0 and _euler(fresh) == 0
