import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morseframes.complex import (
    ComplexError,
    SimplexNotInComplex,
    add,
    boundary,
    boundary_map,
    chain_dimension,
    closure,
    simplex,
)

from conftest import ALL_FIXTURES, complexes


def test_closure_of_triangle(triangle):
    assert triangle.f_vector() == (3, 3, 1)
    assert len(triangle) == 7


def test_closure_of_hollow_triangle(hollow):
    assert hollow.f_vector() == (3, 3)
    assert hollow.skeleton(2) == []


def test_torus_fixture_counts(torus):
    assert torus.f_vector() == (7, 21, 14)
    assert torus.euler_characteristic() == 0


def test_dunce_hat_fixture_counts(dunce):
    assert dunce.f_vector() == (8, 24, 17)
    # no free edge: every edge lies in at least two triangles
    assert all(len(dunce.coboundary(e)) >= 2 for e in dunce.skeleton(1))


def test_closure_rejects_empty_facet():
    with pytest.raises(ComplexError, match="facet 1"):
        closure([[0, 1], []])


def test_closure_rejects_negative_vertex():
    with pytest.raises(ComplexError, match="facet 0"):
        closure([[-1, 2]])


def test_noncontiguous_vertex_ids():
    K = closure([[3, 10, 42]])
    assert K.skeleton(0) == [(3,), (10,), (42,)]
    assert K.ordinal((10, 42)) == 2


def test_lexicographic_ordinals(triangle):
    assert triangle.skeleton(1) == [(0, 1), (0, 2), (1, 2)]
    assert [triangle.ordinal(e) for e in triangle.skeleton(1)] == [0, 1, 2]
    assert triangle.skeleton(-1) == []


def test_boundary_examples():
    assert boundary((0,)) == frozenset()
    assert boundary((0, 1)) == {(0,), (1,)}
    assert boundary((0, 1, 2)) == {(0, 1), (0, 2), (1, 2)}


def test_coboundary_examples(triangle):
    assert triangle.coboundary((0, 1, 2)) == frozenset()
    assert triangle.coboundary((0,)) == {(0, 1), (0, 2)}
    assert triangle.coboundary((0, 1)) == {(0, 1, 2)}


def test_coboundary_outside_complex(triangle):
    with pytest.raises(SimplexNotInComplex, match="simplex not in complex"):
        triangle.coboundary((0, 3))


def test_boundary_map_examples(hollow):
    assert boundary_map({(0, 1), (1, 2)}) == {(0,), (2,)}
    assert boundary_map({(0, 1), (0, 2), (1, 2)}) == frozenset()
    assert hollow.coboundary_map({(1,)}) == {(0, 1), (1, 2)}
    assert boundary_map(frozenset()) == frozenset()
    assert hollow.coboundary_map(frozenset()) == frozenset()


def test_mixed_dimension_chain_rejected(triangle):
    with pytest.raises(ComplexError, match="mixed-dimension"):
        boundary_map({(0,), (0, 1)})
    with pytest.raises(ComplexError):
        triangle.coboundary_map({(0,), (0, 1)})


def test_simplex_normalisation():
    assert simplex([2, 0, 1]) == (0, 1, 2)
    with pytest.raises(ComplexError):
        simplex([1, 1])
    with pytest.raises(ComplexError):
        simplex([])


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
def test_boundary_squares_vanish_on_basis(name):
    K = ALL_FIXTURES[name]
    for s in K:
        assert boundary_map(boundary_map([s])) == frozenset()
        assert K.coboundary_map(K.coboundary_map([s])) == frozenset()


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
def test_adjointness(name):
    K = ALL_FIXTURES[name]
    for p in range(K.dim):
        for s in K.skeleton(p):
            for t in K.skeleton(p + 1):
                assert (s in boundary(t)) == (t in K.coboundary(s))


@settings(max_examples=60, deadline=None)
@given(complexes(), st.randoms(use_true_random=False))
def test_boundary_squares_on_random_chains(K, rnd):
    for p in range(K.dim + 1):
        c = frozenset(s for s in K.skeleton(p) if rnd.random() < 0.5)
        assert boundary_map(boundary_map(c)) == frozenset()
        assert K.coboundary_map(K.coboundary_map(c)) == frozenset()


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_closure_idempotent(K):
    assert closure(K.facets()) == K
    assert closure(K.simplices) == K


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sets(st.sampled_from([(0,), (1,), (2,), (3,)])), min_size=3, max_size=3))
def test_chain_addition_is_a_z2_vector_space(chains):
    a, b, c = map(frozenset, chains)
    assert add(a, b) == add(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, a) == frozenset()
    assert add(a, frozenset()) == a


def test_chain_dimension():
    assert chain_dimension(frozenset()) is None
    assert chain_dimension({(0, 1), (1, 2)}) == 1
