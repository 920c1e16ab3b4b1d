import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropmirror.deformation import candidate_points, hom_from_point, pt1_basis, shifted_images
from tropmirror.oracles import candidate_box, hom_constraints, hom_dimension
from tropmirror.polytope import convex_hull, lattice_points
from tropmirror.toric import divisor_polytope, toric_from_rays
from tropmirror.verify import P2_RAYS, P4_RAYS

P2 = toric_from_rays(P2_RAYS, var="x")
P4 = toric_from_rays(P4_RAYS, var="x")
K3_IDEAL = P4.ideal([(1, 1, 0, 0, 0), (0, 0, 1, 1, 1)])
FANS = {
    "P2": P2_RAYS,
    "P3": [(-1, -1, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
    "P1xP1": [(1, 0), (0, 1), (-1, 0), (0, -1)],
    "P112": [(1, 0), (0, 1), (-1, -2)],
    "P4": P4_RAYS,
}


def test_candidate_points_on_p2():
    cubic = P2.ideal([(1, 1, 1)])
    assert len(candidate_points(cubic, P2)) == 10
    assert set(candidate_points(cubic, P2)) == set(lattice_points(divisor_polytope(P2, (1, 1, 1))))
    assert len(candidate_points(P2.ideal([(1, 0, 0)]), P2)) == 3


def test_k3_candidates_are_the_union_of_section_polytopes():
    quadric = set(lattice_points(divisor_polytope(P4, (1, 1, 0, 0, 0))))
    cubic = set(lattice_points(divisor_polytope(P4, (0, 0, 1, 1, 1))))
    assert len(quadric) == 15 and len(cubic) == 35
    assert set(candidate_points(K3_IDEAL, P4)) == quadric | cubic


def test_zero_character_is_not_a_direction():
    assert shifted_images((0, 0, 0, 0), K3_IDEAL, P4) == [None, None]
    assert hom_from_point((0, 0, 0, 0), K3_IDEAL, P4) is None


def test_k3_direction_moving_the_quadric():
    alpha = P4.alpha_of((-1, -1, 2, 0, 0))
    assert alpha is not None
    d = hom_from_point(alpha, K3_IDEAL, P4)
    assert d is not None
    assert d.images == ((0, 0, 2, 0, 0), None)
    assert d.describe() == f"alpha={list(alpha)}: [x2^2, 0]"


def test_p2_principal_ideal_direction():
    alpha = P2.alpha_of((2, -1, -1))
    d = hom_from_point(alpha, P2.ideal([(1, 1, 1)]), P2)
    assert d.images == ((3, 0, 0),)


def test_basis_sizes():
    assert len(pt1_basis(P2.ideal([(1, 1, 1)]), P2)) == 9
    k3 = pt1_basis(K3_IDEAL, P4)
    assert len(k3) == 43
    assert convex_hull(k3.alphas()).face_lattice.fvector() == (1, 10, 24, 25, 11, 1)
    groups = k3.grouping()
    assert sorted(len(v) for v in groups.values()) == [14, 29]
    quintic = pt1_basis(P4.ideal([(1, 1, 1, 1, 1)]), P4)
    assert len(quintic) == 125


def test_k3_directions_match_the_oracle():
    basis = pt1_basis(K3_IDEAL, P4)
    for d in basis.directions:
        assert hom_dimension(d.alpha, K3_IDEAL, P4) == 1
    assert len(set(basis.alphas())) == len(basis)


def _check_against_oracle(I0, T):
    basis = pt1_basis(I0, T)
    alphas = basis.alphas()
    assert len(set(alphas)) == len(alphas)
    expected = {a for a in candidate_box(I0, T) if any(a) and hom_dimension(a, I0, T) > 0}
    assert set(alphas) == expected
    for d in basis.directions:
        unknowns, rows = hom_constraints(d.alpha, I0, T)
        values = [int(d.images[j] is not None) for j in unknowns]
        assert all(sum(r * v for r, v in zip(row, values)) == 0 for row in rows)


def _reduced_ideal(nrays):
    row = st.lists(st.integers(0, 1), min_size=nrays, max_size=nrays).filter(any).map(tuple)
    return st.lists(row, min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["P2", "P3", "P1xP1", "P112"]).flatmap(
    lambda name: st.tuples(st.just(name), _reduced_ideal(len(FANS[name])))))
def test_basis_matches_hom_oracle(case):
    name, gens = case
    T = toric_from_rays(FANS[name], var="x")
    _check_against_oracle(T.ideal(gens), T)


@settings(max_examples=8, deadline=None)
@given(_reduced_ideal(5).filter(lambda g: max(sum(x) for x in g) <= 3))
def test_basis_matches_hom_oracle_in_five_variables(gens):
    _check_against_oracle(P4.ideal(gens), P4)


@pytest.mark.parametrize("gens", [[(1, 1, 0, 0, 0), (0, 0, 1, 1, 1)], [(1, 0, 0, 0, 0), (0, 1, 1, 0, 0)]])
def test_complete_intersection_directions_satisfy_koszul_relations(gens):
    # generators with disjoint supports have only Koszul syzygies
    I0 = P4.ideal(gens)
    for alpha in candidate_points(I0, P4):
        if not any(alpha):
            continue
        images = shifted_images(alpha, I0, P4)
        d = hom_from_point(alpha, I0, P4)
        if any(im is not None for im in images):
            assert d is not None and list(d.images) == images
