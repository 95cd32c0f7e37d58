"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible even under output
capture) and then asserts.  Run on its own with::

    pytest tests/test_acceptance.py -v
"""
import json
import random
import subprocess
import sys
import time
import tracemalloc

import pytest
from click.testing import CliRunner

from morseframes import fixtures, z2
from morseframes.annotation import annotate
from morseframes.betti import perfect_frame
from morseframes.checks import (
    annotation_prefix_violations,
    boundary_square_violations,
    cocycle_basis_violations,
    cycle_class_violations,
)
from morseframes.cli import main
from morseframes.complex import Complex
from morseframes.frames import check_duality, coreference, path_parity_violations, reference
from morseframes.morse_complex import (
    build_dual_morse_complex,
    build_morse_complex,
    check_chain_map,
    morse_betti,
    square_violations,
)
from morseframes.sequence import MorseSequence, build_sequence, decreasing_scheme, validate

SCHEMES = [(s, o) for s in ("increasing", "decreasing") for o in ("lex", "random")]
PICKS = ("min-lex", "latest")
FIXTURES = fixtures.load_all()


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return emit


def mf(*args: str) -> tuple[subprocess.CompletedProcess, float]:
    start = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-m", "morseframes.cli", *args], capture_output=True, text=True
    )
    return out, time.perf_counter() - start


def test_criterion_1_torus_betti(report):
    path = str(fixtures.path("torus"))
    out, elapsed = mf("betti", path, "--scheme", "increasing", "--order", "lex")
    oracle, _ = mf("betti", path, "--oracle")
    ok = out.returncode == 0 and out.stdout == "1 2 1\n" == oracle.stdout and elapsed < 1.0
    report(1, "torus Betti numbers", ok, f"got {out.stdout.strip()!r}, oracle {oracle.stdout.strip()!r}, {elapsed:.2f}s")


def test_criterion_2_dunce_hat_betti(report):
    path = str(fixtures.path("dunce_hat"))
    out, elapsed = mf("betti", path, "--trace")
    oracle, _ = mf("betti", path, "--oracle")
    lines = out.stdout.splitlines()
    trace = [ln for ln in lines if ln.startswith("cancel ")]
    ok = out.returncode == 0 and lines[-1:] == ["1 0 0"] and oracle.stdout == "1 0 0\n" and trace and elapsed < 1.0
    report(2, "dunce-hat Betti numbers", bool(ok), f"{len(trace)} cancellation(s) {trace}, {elapsed:.2f}s")


def test_criterion_3_oracle_sweep(report):
    start = time.perf_counter()
    mismatches = []
    runs = 0
    for seed in range(120):
        K = fixtures.random_complex(seed)
        assert len(K) <= 40
        oracle = z2.betti_numbers(K)
        for scheme, order in SCHEMES:
            W = build_sequence(K, scheme, order, seed)
            ref = reference(W)
            mb = morse_betti(build_morse_complex(W, ref))
            for pick in PICKS:
                runs += 1
                pf = perfect_frame(W, ref, pick).betti
                live = annotate(W, pick).live_counts()
                if not pf == live == mb == oracle:
                    mismatches.append((seed, scheme, order, pick, pf, live, mb, oracle))
    elapsed = time.perf_counter() - start
    report(3, "oracle equivalence sweep", not mismatches and elapsed < 60,
           f"120 complexes, {runs} runs, {len(mismatches)} mismatches, {elapsed:.1f}s")


def test_criterion_4_chain_map(report):
    failures = []
    for name, K in FIXTURES.items():
        for scheme, order in SCHEMES:
            W = build_sequence(K, scheme, order, seed=0)
            ref = reference(W)
            c = check_chain_map(K, ref, build_morse_complex(W, ref), trials=100, seed=7)
            if c is not None:
                failures.append((name, scheme, order, sorted(c)))
    report(4, "chain-map identity", not failures, f"{len(FIXTURES)} fixtures x {len(SCHEMES)} sequences, {len(failures)} violations")


def test_criterion_5_boundary_squares(report):
    bad = []
    for name, K in FIXTURES.items():
        bad += [(name, v) for v in boundary_square_violations(K)]
        for scheme, order in SCHEMES:
            W = build_sequence(K, scheme, order, seed=0)
            bad += [(name, "d", s) for s in square_violations(build_morse_complex(W, reference(W)))]
            bad += [(name, "d*", s) for s in square_violations(build_dual_morse_complex(W, coreference(W)))]
    report(5, "boundary-square laws", not bad, f"{len(bad)} violations")


def test_criterion_6_duality(report):
    bad = []
    pairs = 0
    for name, K in FIXTURES.items():
        for scheme, order in SCHEMES:
            W = build_sequence(K, scheme, order, seed=0)
            counts = W.critical_counts()
            pairs += sum(counts[p] * counts[p + 1] for p in range(len(counts) - 1))
            c = check_duality(W)
            if c is not None:
                bad.append((name, scheme, order, c))
    report(6, "reference and co-reference duality", not bad, f"{pairs} critical pairs, {len(bad)} violations")


def test_criterion_7_path_parity(report):
    start = time.perf_counter()
    bad = []
    for name, K in FIXTURES.items():
        if len(K) > 200:
            continue
        for scheme, order in SCHEMES:
            W = build_sequence(K, scheme, order, seed=0)
            bad += [(name, scheme, order, v) for v in path_parity_violations(W)]
    elapsed = time.perf_counter() - start
    report(7, "path parity", not bad and elapsed < 30, f"{len(bad)} violations, {elapsed:.1f}s")


def test_criterion_8_annotation_conditions(report):
    bad = []
    for name, K in FIXTURES.items():
        for scheme, order in SCHEMES:
            W = build_sequence(K, scheme, order, seed=0)
            for pick in PICKS:
                bad += [(name, pick, v) for v in annotation_prefix_violations(W, pick, every_step=True)]
                bad += [(name, pick, v) for v in cycle_class_violations(W, pick, pairs=100, seed=1)]
                bad += [(name, pick, v) for v in cocycle_basis_violations(W, pick)]
    report(8, "annotation conditions C1-C4", not bad, f"{len(bad)} violations")


def _shuffled_equivalent(W: MorseSequence, rng: random.Random) -> MorseSequence:
    steps = W.steps
    for _ in range(300):
        i = rng.randrange(len(steps) - 1)
        trial = steps[:i] + [steps[i + 1], steps[i]] + steps[i + 2:]
        if validate(MorseSequence.from_steps(W.complex, trial)) is None:
            steps = trial
    return MorseSequence.from_steps(W.complex, steps)


def test_criterion_9_determinism(report):
    runner = CliRunner()
    differing = []
    commands = ["sequence", "reference", "coreference", "morse-complex", "annotate", "betti"]
    for name in ("torus", "dunce_hat", "annulus"):
        path = str(fixtures.path(name))
        for cmd in commands:
            for scheme, order in SCHEMES:
                args = [cmd, path, "--scheme", scheme, "--order", order, "--seed", "5", "--json"]
                a, b = runner.invoke(main, args), runner.invoke(main, args)
                if a.exit_code or a.stdout_bytes != b.stdout_bytes:
                    differing.append(args)
    unequal = []
    for name, K in FIXTURES.items():
        W = build_sequence(K)
        V = _shuffled_equivalent(W, random.Random(name))
        assert V.gradient_vector_field() == W.gradient_vector_field()
        if reference(V) != reference(W) or coreference(V) != coreference(W):
            unequal.append(name)
    report(9, "determinism", not differing and not unequal,
           f"{len(differing)} differing outputs, {len(unequal)} unequal frames on equivalent sequences")


def grid_disk(m: int) -> Complex:
    """Triangulated m x m square: a collapsible 2-complex with about 6 m^2 simplexes."""
    def v(i, j):
        return i * (m + 1) + j

    simplexes = set()
    for i in range(m):
        for j in range(m):
            a, b, c, d = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
            for t in ((a, b, d), (a, c, d)):
                t = tuple(sorted(t))
                simplexes.update([t, t[:2], t[::2], t[1:], t[:1], t[1:2], t[2:]])
    return Complex(simplexes)


def _reference_cost(m: int) -> tuple[int, float, int]:
    W = decreasing_scheme(grid_disk(m))
    assert W.critical_counts() == [1, 0, 0]
    start = time.perf_counter()
    reference(W)
    elapsed = time.perf_counter() - start
    tracemalloc.start()
    reference(W)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    return len(W.complex), elapsed, peak


def test_criterion_10_scaling(report):
    n_small, _, peak_small = _reference_cost(91)
    n, elapsed, peak = _reference_cost(129)
    per_small, per_large = peak_small / n_small, peak / n
    linear = per_large <= 1.25 * per_small
    report(10, "scaling smoke test", n >= 10**5 and elapsed < 5 and linear,
           f"n={n}, {elapsed:.2f}s, peak {per_small:.1f} -> {per_large:.1f} bytes/simplex")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
