from itertools import combinations, product

from hypothesis import given, settings
from hypothesis import strategies as st

from tropmirror.monomials import (
    MonomialIdeal,
    divides,
    format_monomial,
    intersect,
    minimal_transversals,
    prime_ideal,
)

exponents = st.lists(st.integers(0, 2), min_size=4, max_size=4).map(tuple)
ideals = st.lists(exponents, min_size=1, max_size=4).map(lambda g: MonomialIdeal.from_generators(4, g))


def test_minimal_generators_and_printing():
    I = MonomialIdeal.from_generators(3, [(1, 1, 0), (1, 1, 1), (0, 0, 2)])
    assert I.generators == ((1, 1, 0), (0, 0, 2))
    assert str(I) == "<x0*x1, x2^2>"
    assert not I.is_reduced
    assert format_monomial((0, 0, 0)) == "1"


def test_unit_and_membership():
    unit = MonomialIdeal.from_generators(2, [(0, 0), (1, 0)])
    assert unit.is_unit and unit.generators == ((0, 0),)
    I = MonomialIdeal.from_generators(3, [(1, 1, 0)])
    assert I.contains((2, 1, 5)) and not I.contains((0, 1, 5))


def test_prime_ideal_and_intersection():
    a = prime_ideal([0, 1], 3)
    b = prime_ideal([2], 3)
    assert intersect(a, b).generators == ((1, 0, 1), (0, 1, 1))


def test_transversal_edge_cases():
    assert minimal_transversals([]) == [frozenset()]
    assert minimal_transversals([[]]) == []
    assert minimal_transversals([[0, 1], [2, 3, 4]]) == [
        frozenset(s) for s in ([0, 2], [0, 3], [0, 4], [1, 2], [1, 3], [1, 4])
    ]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 5), min_size=1, max_size=4), max_size=5))
def test_transversals_match_brute_force(family):
    universe = range(6)
    hitting = [frozenset(s) for k in range(7) for s in combinations(universe, k) if all(set(s) & e for e in family)]
    minimal = {s for s in hitting if not any(t < s for t in hitting)}
    assert set(minimal_transversals(family)) == minimal


@settings(max_examples=100, deadline=None)
@given(ideals, ideals)
def test_intersection_membership(a, b):
    both = intersect(a, b)
    for e in product(range(4), repeat=4):
        assert both.contains(e) == (a.contains(e) and b.contains(e))


@settings(max_examples=100, deadline=None)
@given(ideals)
def test_generators_are_minimal(I):
    gens = I.generators
    assert all(not divides(g, h) for g in gens for h in gens if g != h)
