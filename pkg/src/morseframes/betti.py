"""Mod-2 Betti numbers from the Morse reference.

Starting from the reference, the critical steps of the sequence are replayed
and, whenever a critical simplex has a nonzero boundary label, one label
``nu`` of that boundary is cancelled against it.  Updates are restricted to
the critical simplexes and their boundary faces, the only labels that are
ever read.  At the end the Betti number in dimension p is the number of
critical p-simplexes still labelled by themselves.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .annotation import PICKS, pick_label
from .complex import Simplex
from .frames import Frame, reference
from .sequence import MorseSequence


class NotReference(ValueError):
    pass


@dataclass
class PerfectFrame:
    frame: Frame
    support: frozenset  # global ids of the working set
    betti: list[int]
    cancellations: list[tuple[Simplex, Simplex]] = field(default_factory=list)

    def trace_lines(self) -> list[str]:
        return [
            f"cancel {' '.join(map(str, nu))} | {' '.join(map(str, sigma))}"
            for nu, sigma in self.cancellations
        ]


def working_set(W: MorseSequence) -> set[int]:
    """Critical simplexes together with their boundary faces (global ids)."""
    K = W.complex
    out: set[int] = set()
    for p in range(K.dim + 1):
        for gid in W.critical_ids(p):
            out.add(gid)
            out.update(K.faces[gid])
    return out


def is_perfect(W: MorseSequence, frame: Frame) -> bool:
    """True iff every critical simplex has a boundary with zero label."""
    return perfectness_witness(W, frame) is None


def perfectness_witness(W: MorseSequence, frame: Frame) -> Simplex | None:
    K = W.complex
    for p in range(K.dim + 1):
        for gid in W.critical_ids(p):
            acc = 0
            for f in K.faces[gid]:
                acc ^= frame.masks[f]
            if acc:
                return K.simplices[gid]
    return None


def _is_reference(W: MorseSequence, frame: Frame) -> bool:
    # these identities determine the reference uniquely
    K = W.complex
    for a, b in zip(W.lo, W.hi):
        if b < 0:
            if frame.masks[a] != 1 << W.critical_ordinal(a):
                return False
            continue
        if frame.masks[b]:
            return False
        acc = 0
        for f in K.faces[b]:
            acc ^= frame.masks[f]
        if acc:
            return False
    return True


def perfect_frame(
    W: MorseSequence, ref: Frame | None = None, pick: str = "min-lex", *, drop_cancelled: bool = True
) -> PerfectFrame:
    """Cancel critical labels until the frame is perfect; read off Betti numbers."""
    if pick not in PICKS:
        raise ValueError(f"unknown pick policy {pick!r}; expected one of {PICKS}")
    K = W.complex
    if ref is None:
        ref = reference(W)
    elif ref.sequence is not W and ref.sequence != W or not _is_reference(W, ref):
        raise NotReference("frame is not the reference of this sequence")
    support = working_set(W)
    masks = list(ref.masks)
    dims = [K.dim_of(g) for g in range(len(K))]
    carriers: list[dict[int, set[int]]] = [dict() for _ in range(K.dim + 1)]
    for g in support:
        m = masks[g]
        while m:
            low = m & -m
            carriers[dims[g]].setdefault(low.bit_length() - 1, set()).add(g)
            m ^= low

    def set_mask(g: int, new: int) -> None:
        diff = masks[g] ^ new
        bucket = carriers[dims[g]]
        while diff:
            low = diff & -diff
            k = low.bit_length() - 1
            if new & low:
                bucket.setdefault(k, set()).add(g)
            else:
                bucket.get(k, set()).discard(g)
            diff ^= low
        masks[g] = new

    created: list[dict[int, int]] = [dict() for _ in range(K.dim + 1)]
    cancellations = []
    for i, (a, b) in enumerate(zip(W.lo, W.hi)):
        if b >= 0:
            continue
        p = dims[a]
        created[p][W.critical_ordinal(a)] = i
        bnd = 0
        for f in K.faces[a]:
            bnd ^= masks[f]
        if not bnd:
            continue
        nu = pick_label(bnd, pick, created[p - 1])
        k = W.critical_ordinal(a)
        # sigma_i's own label becomes 0, and its coordinate is dropped from
        # every other label in the working set
        if drop_cancelled:
            for g in list(carriers[p].get(k, ())):
                set_mask(g, masks[g] & ~(1 << k))
        else:
            set_mask(a, 0)
        for g in list(carriers[p - 1].get(nu, ())):
            set_mask(g, masks[g] ^ bnd)
        cancellations.append((K.simplices[W.critical_ids(p - 1)[nu]], K.simplices[a]))

    frame = Frame(W, masks, "perfect")
    betti = [
        sum(1 for g in W.critical_ids(p) if masks[g] == 1 << W.critical_ordinal(g))
        for p in range(K.dim + 1)
    ]
    return PerfectFrame(frame, frozenset(support), betti, cancellations)
