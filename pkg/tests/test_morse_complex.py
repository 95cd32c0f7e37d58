import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morseframes import z2
from morseframes.complex import boundary
from morseframes.frames import Frame, coreference, reference
from morseframes.morse_complex import (
    NotAReference,
    build_dual_morse_complex,
    build_morse_complex,
    check_chain_map,
    morse_betti,
    square_violations,
)
from morseframes.sequence import build_sequence, decreasing_scheme, increasing_scheme

from conftest import ALL_FIXTURES, SCHEME_GRID, complexes


def morse(K, scheme="increasing", order="lex", seed=0):
    W = build_sequence(K, scheme, order, seed)
    return W, build_morse_complex(W, reference(W))


def test_hollow_zero_differential(hollow):
    _, M = morse(hollow)
    assert M.differential[(1, 2)] == frozenset()
    assert all(not M.matrix(p).entries for p in range(2))
    assert morse_betti(M) == [1, 1]


def test_torus_differentials_vanish(torus):
    _, M = morse(torus)
    assert all(not d for d in M.differential.values())
    assert morse_betti(M) == [1, 2, 1]


def test_dunce_hat_differential(dunce):
    _, M = morse(dunce)
    assert M.differential[(4, 7, 8)] == {(2, 3)}
    assert morse_betti(M) == [1, 0, 0]


def test_full_triangle(triangle):
    _, M = morse(triangle, "decreasing")
    assert morse_betti(M) == [1, 0, 0]


def test_chain_map_trivial_chains(torus):
    W, M = morse(torus)
    ref = reference(W)
    assert M.apply(frozenset()) == ref.image(frozenset()) == frozenset()
    for s in M.critical[1]:
        assert M.apply({s}) == ref.image(boundary(s))


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
@pytest.mark.parametrize("scheme, order", SCHEME_GRID)
def test_chain_maps_and_squares(name, scheme, order):
    K = ALL_FIXTURES[name]
    W = build_sequence(K, scheme, order, seed=6)
    ref, coref = reference(W), coreference(W)
    M = build_morse_complex(W, ref)
    Md = build_dual_morse_complex(W, coref)
    assert check_chain_map(K, ref, M, trials=100, seed=1) is None
    assert check_chain_map(K, coref, Md, trials=100, seed=1) is None
    assert square_violations(M) == [] and square_violations(Md) == []
    oracle = z2.betti_numbers(K)
    assert morse_betti(M) == morse_betti(Md) == oracle


def test_chain_map_detects_a_wrong_frame(torus):
    W = increasing_scheme(torus)
    ref = reference(W)
    M = build_morse_complex(W, ref)
    masks = list(ref.masks)
    masks[torus.id_of((0, 1))] ^= 1
    assert check_chain_map(torus, Frame(W, masks), M) is not None


def test_non_reference_rejected(torus):
    W = increasing_scheme(torus)
    masks = list(reference(W).masks)
    masks[torus.id_of((0, 1))] ^= 1
    with pytest.raises(NotAReference):
        build_morse_complex(W, Frame(W, masks))


def test_matrix_shape(dunce):
    _, M = morse(dunce)
    assert M.matrix(2).shape == (1, 1)
    assert M.matrix(0).shape == (0, 1)


@settings(max_examples=60, deadline=None)
@given(complexes(), st.sampled_from(SCHEME_GRID), st.integers(0, 999))
def test_random_morse_betti(K, grid, seed):
    W = build_sequence(K, *grid, seed=seed)
    M = build_morse_complex(W, reference(W))
    assert square_violations(M) == []
    assert morse_betti(M) == z2.betti_numbers(K)
    assert check_chain_map(K, reference(W), M, trials=10, seed=seed) is None
