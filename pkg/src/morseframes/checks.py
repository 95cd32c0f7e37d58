"""Invariant battery shared by ``mf check`` and the test-suite.

Every check returns a list of violations; an empty list is a pass.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import z2
from .annotation import Annotator
from .betti import is_perfect, perfect_frame
from .complex import Complex, boundary_map
from .frames import (
    check_duality,
    coreference,
    limit_case_violations,
    path_parity_violations,
    reference,
    reference_consistency_violations,
)
from .morse_complex import (
    build_dual_morse_complex,
    build_morse_complex,
    check_chain_map,
    morse_betti,
    square_violations,
)
from .sequence import MorseSequence, validate

PATH_PARITY_LIMIT = 200
PREFIX_CHECK_LIMIT = 200


@dataclass
class CheckResult:
    name: str
    violations: list = field(default_factory=list)
    skipped: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def line(self) -> str:
        status = "skip" if self.skipped else ("pass" if self.ok else "FAIL")
        tail = f" ({len(self.violations)} violations: {self.violations[0]!r})" if self.violations else ""
        return f"{status} {self.name}{tail}"


def boundary_square_violations(K: Complex) -> list:
    bad = []
    for s in K.simplices:
        if boundary_map(boundary_map([s])):
            bad.append(("boundary", s))
        if K.coboundary_map(K.coboundary_map([s])):
            bad.append(("coboundary", s))
    return bad


def _padded(values: list[int], n: int) -> list[int]:
    return (list(values) + [0] * n)[:n]


def annotation_prefix_violations(W: MorseSequence, pick: str = "min-lex", every_step: bool | None = None) -> list:
    """C1 after every step; C2 against the oracle on prefix complexes."""
    K = W.complex
    if every_step is None:
        every_step = len(K) <= PREFIX_CHECK_LIMIT
    ann = Annotator(W, pick)
    n = K.dim + 1
    bad = []
    while not ann.done:
        ev = ann.step()
        live_masks = [sum(1 << k for k in ann.live[p]) for p in range(n)]
        for gid, s in enumerate(K.simplices):
            if ann.present[gid] and ann.masks[gid] & ~live_masks[len(s) - 1]:
                bad.append(("C1", ev.index, s))
        if every_step or ann.done:
            prefix = Complex(s for gid, s in enumerate(K.simplices) if ann.present[gid])
            expected = _padded(z2.betti_numbers(prefix), n)
            if ann.live_counts() != expected:
                bad.append(("C2", ev.index, ann.live_counts(), expected))
    return bad


def random_cycle(K: Complex, p: int, rng: random.Random) -> frozenset:
    basis = z2.kernel_basis(z2.boundary_matrix(K, p))
    v = np.zeros(K.count(p), dtype=bool)
    for b in basis:
        if rng.random() < 0.5:
            v ^= b
    bnd = z2.boundary_matrix(K, p + 1)
    for j in range(bnd.cols):
        if rng.random() < 0.3:
            v ^= bnd.array[:, j]
    return z2.vector_chain(K, p, v)


def cycle_class_violations(W: MorseSequence, pick: str = "min-lex", pairs: int = 100, seed: int = 0) -> list:
    """C3: equal labels exactly for homologous cycle pairs, per dimension."""
    K = W.complex
    ann = Annotator(W, pick).run()
    rng = random.Random(seed)
    bad = []
    for p in range(K.dim + 1):
        for _ in range(pairs):
            z = random_cycle(K, p, rng)
            if rng.random() < 0.5:
                # same class by construction
                bnd = z2.boundary_matrix(K, p + 1)
                v = z2.chain_vector(K, p, z)
                for j in range(bnd.cols):
                    if rng.random() < 0.3:
                        v ^= bnd.array[:, j]
                z2_ = z2.vector_chain(K, p, v)
            else:
                z2_ = random_cycle(K, p, rng)
            same_label = ann.cycle_class(z) == ann.cycle_class(z2_)
            if same_label != z2.homologous(K, z, z2_):
                bad.append(("C3", p, sorted(z), sorted(z2_)))
    return bad


def cocycle_basis_violations(W: MorseSequence, pick: str = "min-lex") -> list:
    """C4: fibers of live simplexes are cocycles whose classes form a basis."""
    K = W.complex
    ann = Annotator(W, pick).run()
    betti = z2.cobetti_numbers(K)
    bad = []
    for p in range(K.dim + 1):
        fibers = [ann.cocycle_fiber(t) for t in ann.live_simplexes(p)]
        for t, f in zip(ann.live_simplexes(p), fibers):
            if K.coboundary_map(f):
                bad.append(("C4-cocycle", t))
        cob = (
            z2.coboundary_matrix(K, p - 1).array
            if p > 0
            else np.zeros((K.count(p), 0), dtype=bool)
        )
        vecs = [z2.chain_vector(K, p, f) for f in fibers]
        stacked = np.column_stack([cob] + vecs) if vecs else cob
        gain = z2.rank(z2.Z2Matrix.from_array(stacked)) - z2.rank(z2.Z2Matrix.from_array(cob))
        if gain != len(fibers) or len(fibers) != betti[p]:
            bad.append(("C4-basis", p, gain, len(fibers), betti[p]))
    return bad


def run_battery(W: MorseSequence, pick: str = "min-lex", seed: int = 0, trials: int = 100) -> list[CheckResult]:
    K = W.complex
    results: list[CheckResult] = []

    def run(name: str, fn: Callable[[], list], skip: bool = False) -> None:
        if skip:
            results.append(CheckResult(name, skipped=True))
            return
        results.append(CheckResult(name, list(fn())))

    violation = validate(W)
    run("sequence-valid", lambda: [] if violation is None else [str(violation)])
    if violation is not None:
        return results
    ref, coref = reference(W), coreference(W)
    oracle = z2.betti_numbers(K)
    M = build_morse_complex(W, ref)
    Md = build_dual_morse_complex(W, coref)
    run("boundary-squares", lambda: boundary_square_violations(K))
    run("reference-consistency", lambda: reference_consistency_violations(W, ref, coref))
    run("limit-cases", lambda: limit_case_violations(W, ref, coref))
    run(
        "path-parity",
        lambda: path_parity_violations(W, ref, coref),
        skip=len(K) > PATH_PARITY_LIMIT,
    )
    run("duality", lambda: [] if (c := check_duality(W, ref, coref)) is None else [c])
    run("chain-map", lambda: [] if (c := check_chain_map(K, ref, M, trials, seed)) is None else [c])
    run("cochain-map", lambda: [] if (c := check_chain_map(K, coref, Md, trials, seed)) is None else [c])
    run("morse-d-squared", lambda: square_violations(M))
    run("morse-dual-d-squared", lambda: square_violations(Md))
    run("morse-betti", lambda: [] if morse_betti(M) == oracle else [(morse_betti(M), oracle)])
    run("dual-morse-betti", lambda: [] if morse_betti(Md) == oracle else [(morse_betti(Md), oracle)])
    pf = perfect_frame(W, ref, pick)
    run("perfect-betti", lambda: [] if pf.betti == oracle else [(pf.betti, oracle)])
    run("perfect-final", lambda: [] if is_perfect(W, pf.frame) else ["not perfect"])
    run(
        "perfect-locality",
        lambda: [K.simplices[g] for g in range(len(K)) if g not in pf.support and pf.frame.masks[g] != ref.masks[g]],
    )
    run("annotation-C1-C2", lambda: annotation_prefix_violations(W, pick))
    run("annotation-C3", lambda: cycle_class_violations(W, pick, trials, seed))
    run("annotation-C4", lambda: cocycle_basis_violations(W, pick))
    return results
