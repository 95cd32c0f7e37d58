import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morseframes import z2
from morseframes.annotation import Annotator, NotLive, annotate, pick_label
from morseframes.checks import (
    annotation_prefix_violations,
    cocycle_basis_violations,
    cycle_class_violations,
)
from morseframes.complex import closure
from morseframes.frames import reference
from morseframes.sequence import Critical, MorseSequence, build_sequence, increasing_scheme

from conftest import ALL_FIXTURES, SCHEME_GRID, complexes

A, B, C = (0,), (1,), (2,)
AB, AC, BC, ABC = (0, 1), (0, 2), (1, 2), (0, 1, 2)
HOLLOW_CYCLE = {AB, AC, BC}


@pytest.fixture
def all_fillings(triangle):
    return MorseSequence.from_steps(triangle, [Critical(s) for s in (A, B, C, AB, AC, BC, ABC)])


def test_all_filling_trace_latest(all_fillings):
    ann = Annotator(all_fillings, "latest")
    events = [ann.step() for _ in range(7)]
    assert [e.case for e in events] == [1, 1, 1, 2, 2, 1, 2]
    assert [e.killed for e in events if e.case == 2] == [B, C, BC]
    assert [ann.live_simplexes(p) for p in range(3)] == [[A], [], []]


def test_all_filling_min_lex(all_fillings):
    ann = annotate(all_fillings, "min-lex")
    assert ann.live_counts() == [1, 0, 0]
    # the smallest label dies first, so c is the survivor
    assert ann.live_simplexes(0) == [C]


def test_single_vertex():
    ann = annotate(increasing_scheme(closure([[0]])))
    assert ann.label((0,)) == {(0,)}
    assert ann.live_counts() == [1]


def test_torus_annotation_is_the_reference(torus):
    W = increasing_scheme(torus)
    ann = Annotator(W)
    cases = {ann.step().case for _ in range(len(W))}
    assert 2 not in cases
    assert ann.frame() == reference(W)


def test_hollow_cycle_class(hollow):
    ann = annotate(increasing_scheme(hollow))
    assert ann.cycle_class(HOLLOW_CYCLE) == {BC}
    assert ann.cycle_class(frozenset()) == frozenset()


def test_full_triangle_cycle_bounds(triangle):
    ann = annotate(increasing_scheme(triangle))
    assert ann.cycle_class(HOLLOW_CYCLE) == frozenset()


def test_cycle_class_rejects_non_cycles(hollow):
    ann = annotate(increasing_scheme(hollow))
    with pytest.raises(z2.NotACycle, match="not a cycle"):
        ann.cycle_class({AB})


def test_cycle_class_rejects_absent_simplex(hollow):
    ann = Annotator(increasing_scheme(hollow))
    ann.step()
    with pytest.raises(z2.NotACycle):
        ann.cycle_class(HOLLOW_CYCLE)


def test_hollow_fiber_cuts_the_circle(hollow):
    ann = annotate(increasing_scheme(hollow))
    fiber = ann.cocycle_fiber(BC)
    assert fiber == {BC}
    assert hollow.coboundary_map(fiber) == frozenset()
    # pairs to 1 with the generating cycle
    assert len(fiber & HOLLOW_CYCLE) % 2 == 1


def test_torus_fiber_of_b(torus):
    W = increasing_scheme(torus)
    ann = annotate(W)
    fiber = ann.cocycle_fiber((1, 2))
    assert fiber == reference(W).fiber((1, 2))
    assert torus.coboundary_map(fiber) == frozenset()


def test_no_fibers_when_betti_vanishes(dunce):
    ann = annotate(increasing_scheme(dunce))
    assert ann.live_simplexes(1) == [] and ann.live_simplexes(2) == []


def test_fiber_of_dead_simplex(dunce):
    W = increasing_scheme(dunce)
    ann = annotate(W)
    dead = dunce.simplices[W.critical_ids(1)[0]]
    with pytest.raises(NotLive):
        ann.cocycle_fiber(dead)


def test_pick_policies():
    created = {0: 5, 1: 2, 2: 9}
    assert pick_label(0b110, "min-lex", created) == 1
    assert pick_label(0b011, "latest", created) == 0
    with pytest.raises(ValueError):
        pick_label(1, "oldest", created)


@pytest.mark.parametrize("name", sorted(ALL_FIXTURES))
@pytest.mark.parametrize("pick", ["min-lex", "latest"])
def test_conditions_on_fixtures(name, pick):
    for grid in SCHEME_GRID:
        W = build_sequence(ALL_FIXTURES[name], *grid, seed=8)
        assert annotation_prefix_violations(W, pick, every_step=True) == []
        assert cycle_class_violations(W, pick, pairs=25, seed=3) == []
        assert cocycle_basis_violations(W, pick) == []


@settings(max_examples=60, deadline=None)
@given(complexes(), st.sampled_from(SCHEME_GRID), st.sampled_from(["min-lex", "latest"]), st.integers(0, 999))
def test_live_counts_match_oracle(K, grid, pick, seed):
    ann = annotate(build_sequence(K, *grid, seed=seed), pick)
    assert ann.live_counts() == z2.betti_numbers(K)
