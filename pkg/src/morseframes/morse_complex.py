"""The Morse chain complex of a sequence, derived from its reference.

``d(sigma) = ref(boundary sigma)`` on critical simplexes.  The dual complex
uses the co-reference and coboundaries, ``d*(sigma) = coref(coboundary
sigma)``, and goes up in dimension.  Homology of either is computed with the
Z2 oracle on explicit matrices in the critical bases.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import z2
from .complex import Complex, Simplex, ZERO
from .frames import Frame
from .sequence import MorseSequence


class NotAReference(ValueError):
    pass


@dataclass
class MorseComplex:
    """Critical simplexes per dimension and the differential on each of them.

    ``dual`` complexes map dimension p to p+1.
    """

    critical: list[list[Simplex]]
    differential: dict[Simplex, frozenset] = field(default_factory=dict)
    dual: bool = False

    @property
    def dim(self) -> int:
        return len(self.critical) - 1

    def apply(self, chain) -> frozenset:
        out: set = set()
        for s in chain:
            out.symmetric_difference_update(self.differential[s])
        return frozenset(out)

    def matrix(self, p: int) -> z2.Z2Matrix:
        """Matrix of the differential leaving dimension ``p``."""
        cols = self.critical[p] if 0 <= p <= self.dim else []
        q = p + 1 if self.dual else p - 1
        rows = self.critical[q] if 0 <= q <= self.dim else []
        row_index = {s: i for i, s in enumerate(rows)}
        entries = [(row_index[f], j) for j, s in enumerate(cols) for f in self.differential[s]]
        return z2.Z2Matrix(len(rows), len(cols), entries)


def _build(W: MorseSequence, frame: Frame, dual: bool) -> MorseComplex:
    K = W.complex
    sx = K.simplices
    adjacency = K.cofaces if dual else K.faces
    critical = [[sx[i] for i in W.critical_ids(p)] for p in range(K.dim + 1)]
    differential = {}
    for p in range(K.dim + 1):
        for gid in W.critical_ids(p):
            q = p + 1 if dual else p - 1
            mask = 0
            for j in adjacency[gid]:
                mask ^= frame.masks[j]
            differential[sx[gid]] = frame.decode(q, mask) if mask else ZERO
    return MorseComplex(critical, differential, dual)


def build_morse_complex(W: MorseSequence, ref: Frame) -> MorseComplex:
    """Morse complex from a reference; rejects frames that are not references."""
    K = W.complex
    for a, b in zip(W.lo, W.hi):
        if b >= 0 and (ref.masks[b] or _sum(ref, K.faces[b])):
            raise NotAReference(f"frame is not a reference: pair ({K.simplices[a]}, {K.simplices[b]})")
    return _build(W, ref, dual=False)


def build_dual_morse_complex(W: MorseSequence, coref: Frame) -> MorseComplex:
    """Dual Morse complex from a co-reference, with ``d*`` raising dimension."""
    K = W.complex
    for a, b in zip(W.lo, W.hi):
        if b >= 0 and (coref.masks[a] or _sum(coref, K.cofaces[a])):
            raise NotAReference(f"frame is not a co-reference: pair ({K.simplices[a]}, {K.simplices[b]})")
    return _build(W, coref, dual=True)


def _sum(frame: Frame, ids) -> int:
    acc = 0
    for j in ids:
        acc ^= frame.masks[j]
    return acc


def morse_betti(M: MorseComplex) -> list[int]:
    """Betti numbers of the (co)chain complex ``M``."""
    n = M.dim + 1
    ranks = [z2.rank(M.matrix(p)) for p in range(n)]
    out = []
    for p in range(n):
        incoming = (ranks[p - 1] if p > 0 else 0) if M.dual else (ranks[p + 1] if p + 1 < n else 0)
        out.append(len(M.critical[p]) - ranks[p] - incoming)
    return out


def square_violations(M: MorseComplex) -> list[Simplex]:
    """Critical simplexes ``s`` with ``d(d(s)) != 0``."""
    return [s for s in M.differential if M.apply(M.differential[s])]


def _random_chain(rng: random.Random, cells: list[Simplex]) -> frozenset:
    return frozenset(s for s in cells if rng.random() < 0.5)


def check_chain_map(K: Complex, ref: Frame, M: MorseComplex | None = None, trials: int = 100, seed: int = 0):
    """Check ``d(ref(c)) == ref(boundary c)`` on basis simplexes and random chains.

    With a dual complex the identity checked is ``d*(coref(c)) == coref(coboundary c)``.
    Returns ``None`` or the first violating chain.
    """
    M = M or build_morse_complex(ref.sequence, ref)
    op = K.coboundary_map if M.dual else K.boundary_map
    rng = random.Random(seed)

    def holds(c) -> bool:
        return M.apply(ref.image(c)) == ref.image(op(c))

    for s in K.simplices:
        if not holds(frozenset([s])):
            return frozenset([s])
    for p in range(K.dim + 1):
        cells = K.skeleton(p)
        for _ in range(trials):
            c = _random_chain(rng, cells)
            if not holds(c):
                return c
    if not holds(frozenset()):
        return frozenset()
    return None
