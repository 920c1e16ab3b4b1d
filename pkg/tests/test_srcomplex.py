import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropmirror.errors import NotEquidimensional, NotReduced, SchemaError, SphereCheckFailed
from tropmirror.polytope import convex_hull, dual_face
from tropmirror.srcomplex import (
    CoComplex,
    EmbeddedComplex,
    complex_from_json,
    complex_to_ideal,
    dualize,
    ideal_to_complex,
    sphere_proxy_check,
    strata_subcomplex,
)
from tropmirror.toric import toric_from_rays
from tropmirror.verify import P2_RAYS, P4_RAYS, pipeline

P4 = toric_from_rays(P4_RAYS, var="x")
P2 = toric_from_rays(P2_RAYS, var="x")
K3_IDEAL = P4.ideal([(1, 1, 0, 0, 0), (0, 0, 1, 1, 1)])
SIMPLEX_FANS = {2: P2_RAYS, 3: [(-1, -1, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 4: P4_RAYS}


def test_k3_complex():
    C = ideal_to_complex(K3_IDEAL, P4)
    assert C.fvector == (1, 5, 9, 6, 0, 0)
    assert {tuple(sorted(f.vertices)) for f in C.maximal_faces()} == {
        (0, 2, 3), (1, 2, 3), (0, 2, 4), (1, 2, 4), (0, 3, 4), (1, 3, 4)
    }
    text = C.describe()
    assert text.splitlines()[0] == "complex of dim 2 embedded in dim 4 (printing facets)"
    assert text.splitlines()[-1] == "F-vector {1,5,9,6,0,0}"
    assert complex_to_ideal(C, P4) == K3_IDEAL


def test_triangle_boundary_and_unit_ideal():
    I = P2.ideal([(1, 1, 1)])
    C = ideal_to_complex(I, P2)
    assert C.fvector == (1, 3, 3, 0)
    assert complex_to_ideal(C, P2) == I
    empty = ideal_to_complex(P2.ideal([(0, 0, 0)]), P2)
    assert len(empty) == 0 and empty.fvector == (0, 0, 0, 0)
    assert complex_to_ideal(empty, P2).is_unit


def test_non_reduced_ideal_is_rejected():
    with pytest.raises(NotReduced):
        ideal_to_complex(P2.ideal([(2, 0, 0)]), P2)


def test_strata_of_a_coordinate_line():
    S = strata_subcomplex(P2.ideal([(1, 0, 0)]), P2)
    assert S.dim == 1 and len(S.maximal_faces()) == 1
    edge = S.maximal_faces()[0]
    assert edge.facets == frozenset({0})
    assert S.fvector == (1, 2, 1, 0)


def test_strata_of_all_coordinate_hyperplanes():
    S = strata_subcomplex(P4.ideal([(1, 1, 1, 1, 1)]), P4)
    delta = P4.delta
    assert {f.vertices for f in S} == {f.vertices for f in delta.face_lattice if f.dim < 4}
    assert sphere_proxy_check(S).passed


def test_k3_strata_is_a_sphere_with_mirror_counts():
    S = strata_subcomplex(K3_IDEAL, P4)
    assert S.fvector == (1, 5, 9, 6, 0, 0)
    assert sphere_proxy_check(S).passed
    dual = dualize(S)
    assert isinstance(dual, CoComplex) and dual.fvector == (0, 0, 6, 9, 5, 1)


def test_dualize_k3_cocomplex():
    R = pipeline("k3")
    assert R.tropical_dual.fvector == (0, 0, 5, 9, 6, 1)
    tc = dualize(R.tropical_dual)
    assert isinstance(tc, EmbeddedComplex) and tc.fvector == (1, 6, 9, 5, 0, 0)
    assert dualize(tc) == R.tropical_dual


def test_single_facet_cocomplex_dualizes_to_a_vertex():
    p = convex_hull(P2_RAYS)
    facet = p.face_lattice.by_dim(1)[0]
    cc = CoComplex(p, [facet, p.face_lattice.top])
    c = dualize(cc)
    assert c.fvector == (1, 1, 0, 0)
    assert [f.dim for f in c.maximal_faces()] == [0]


def test_closure_is_enforced():
    p = convex_hull(P2_RAYS)
    edge = p.face_lattice.by_dim(1)[0]
    with pytest.raises(ValueError):
        EmbeddedComplex(p, [edge])
    with pytest.raises(ValueError):
        CoComplex(p, [edge])


def test_sphere_checks():
    simplex = convex_hull(P4_RAYS)
    boundary = EmbeddedComplex(simplex, [f for f in simplex.face_lattice if f.dim < 4])
    assert sphere_proxy_check(boundary).passed
    assert sphere_proxy_check(ideal_to_complex(K3_IDEAL, P4)).passed
    prism = convex_hull([(1, 0, 1), (0, 1, 1), (-1, -1, 1), (1, 0, -1), (0, 1, -1), (-1, -1, -1)])
    triangles = [f for f in prism.face_lattice if f.dim == 2 and len(f.vertices) == 3]
    assert len(triangles) == 2
    faces = [g for t in triangles for g in prism.face_lattice.subfaces(t) if g.dim < 2]
    two_loops = EmbeddedComplex(prism, faces)
    report = sphere_proxy_check(two_loops)
    assert not report.passed and not report.connected
    with pytest.raises(SphereCheckFailed):
        sphere_proxy_check(two_loops, strict=True)


def test_mixed_dimensions_are_not_equidimensional():
    p = convex_hull(P2_RAYS)
    edge = p.face_lattice.by_dim(1)[0]
    lone = next(v for v in p.face_lattice.by_dim(0) if not v.vertices <= edge.vertices)
    faces = p.face_lattice.subfaces(edge) + [lone]
    with pytest.raises(NotEquidimensional):
        sphere_proxy_check(EmbeddedComplex(p, faces))


def test_json_round_trip_and_schema_errors():
    C = ideal_to_complex(K3_IDEAL, P4)
    assert complex_from_json(C.to_json()) == C
    data = C.to_json()
    data["kind"] = "other"
    with pytest.raises(SchemaError):
        complex_from_json(data)
    with pytest.raises(SchemaError):
        complex_from_json({"kind": "complex"})
    data = C.to_json()
    data["faces"] = [[0, 1, 2, 3]]
    with pytest.raises(SchemaError):
        complex_from_json(data)


def _squarefree_ideals(n):
    gens = st.lists(st.lists(st.integers(0, 1), min_size=n + 1, max_size=n + 1).map(tuple), min_size=1, max_size=4)
    return gens.filter(lambda g: all(any(x) for x in g))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(SIMPLEX_FANS)).flatmap(lambda n: st.tuples(st.just(n), _squarefree_ideals(n))))
def test_ideal_complex_round_trip_on_projective_space(case):
    n, gens = case
    T = toric_from_rays(SIMPLEX_FANS[n], var="x")
    I = T.ideal(gens)
    C = ideal_to_complex(I, T)
    assert complex_to_ideal(C, T) == I
    # on a simplex the strata are the complements of the faces of C
    S = strata_subcomplex(I, T)
    everything = frozenset(range(T.nrays))
    assert {everything - g.facets for g in S} == {f.vertices for f in C}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(SIMPLEX_FANS)).flatmap(lambda n: st.tuples(st.just(n), _squarefree_ideals(n))))
def test_dualize_is_an_involution(case):
    n, gens = case
    T = toric_from_rays(SIMPLEX_FANS[n], var="x")
    for c in (ideal_to_complex(T.ideal(gens), T), strata_subcomplex(T.ideal(gens), T)):
        d = dualize(c)
        assert isinstance(d, CoComplex)
        assert dualize(d) == c
        assert len(d) == len(c)
        for f in c:
            assert dual_face(c.polytope, f) in d
