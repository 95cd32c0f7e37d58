"""Annotations along a Morse sequence.

The :class:`Annotator` walks the sequence left to right and keeps a frame on
the current prefix complex such that the live critical simplexes (those
labelled by themselves) number the Betti numbers of the prefix, and labels
of cycles classify them up to homology.

A critical step whose boundary has a nonzero label kills one live simplex
``nu`` of that label; every simplex carrying ``nu`` gets the boundary label
added.  An inverted index ``nu -> carriers`` keeps that sweep local.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complex import Simplex, boundary_map
from .frames import Frame
from .sequence import MorseSequence
from .z2 import NotACycle

PICKS = ("min-lex", "latest")


class NotLive(ValueError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def pick_label(mask: int, policy: str, created: dict[int, int]) -> int:
    """Choose one ordinal from ``mask``: the smallest, or the most recently created."""
    if policy == "min-lex":
        return (mask & -mask).bit_length() - 1
    if policy == "latest":
        return max(_bits(mask), key=lambda k: created[k])
    raise ValueError(f"unknown pick policy {policy!r}; expected one of {PICKS}")


@dataclass
class Event:
    """One step of the annotation scan."""

    index: int
    case: int
    sigma: Simplex
    killed: Simplex | None = None


class Annotator:
    def __init__(self, W: MorseSequence, pick: str = "min-lex"):
        W.require_valid()
        if pick not in PICKS:
            raise ValueError(f"unknown pick policy {pick!r}; expected one of {PICKS}")
        self.sequence = W
        self.complex = W.complex
        self.pick = pick
        n = len(W.complex)
        self.masks = [0] * n
        self.present = bytearray(n)
        self.step_index = 0
        # per dimension: ordinal -> set of carrier gids
        self.carriers: list[dict[int, set[int]]] = [dict() for _ in range(W.complex.dim + 1)]
        self.live: list[set[int]] = [set() for _ in range(W.complex.dim + 1)]
        self.created: list[dict[int, int]] = [dict() for _ in range(W.complex.dim + 1)]

    def _set(self, gid: int, new: int) -> None:
        old = self.masks[gid]
        if old == new:
            return
        carriers = self.carriers[self.complex.dim_of(gid)]
        for k in _bits(old ^ new):
            bucket = carriers.setdefault(k, set())
            if new >> k & 1:
                bucket.add(gid)
            else:
                bucket.discard(gid)
        self.masks[gid] = new

    def _sum(self, ids) -> int:
        acc = 0
        for j in ids:
            acc ^= self.masks[j]
        return acc

    @property
    def done(self) -> bool:
        return self.step_index >= len(self.sequence)

    def step(self) -> Event:
        W, K = self.sequence, self.complex
        i = self.step_index
        a, b = W.lo[i], W.hi[i]
        self.step_index += 1
        if b >= 0:
            self.present[a] = self.present[b] = 1
            self._set(a, self._sum(f for f in K.faces[b] if f != a))
            return Event(i, 3, K.simplices[a])
        self.present[a] = 1
        p = K.dim_of(a)
        k = W.critical_ordinal(a)
        bnd = self._sum(K.faces[a])
        if not bnd:
            self._set(a, 1 << k)
            self.live[p].add(k)
            self.created[p][k] = i
            return Event(i, 1, K.simplices[a])
        nu = pick_label(bnd, self.pick, self.created[p - 1])
        for t in list(self.carriers[p - 1].get(nu, ())):
            self._set(t, self.masks[t] ^ bnd)
        self.live[p - 1].discard(nu)
        return Event(i, 2, K.simplices[a], K.simplices[W.critical_ids(p - 1)[nu]])

    def run(self) -> "Annotator":
        while not self.done:
            self.step()
        return self

    # -- queries ---------------------------------------------------------------
    def frame(self) -> Frame:
        """Current labels as a frame (prefix simplexes only carry labels)."""
        return Frame(self.sequence, list(self.masks), "annotation")

    def live_simplexes(self, p: int) -> list[Simplex]:
        ids = self.sequence.critical_ids(p)
        return [self.complex.simplices[ids[k]] for k in sorted(self.live[p])] if p < len(self.live) else []

    def live_counts(self) -> list[int]:
        return [len(v) for v in self.live]

    def label(self, s: Simplex) -> frozenset:
        gid = self.complex.id_of(s)
        return self.frame().decode(len(s) - 1, self.masks[gid])

    def cycle_class(self, z) -> frozenset:
        """Label of the cycle ``z``; equal labels iff homologous in the prefix complex."""
        z = frozenset(z)
        if not z:
            return frozenset()
        for s in z:
            if not self.present[self.complex.id_of(s)]:
                raise NotACycle(f"not a cycle of the current complex: {s} is absent")
        if boundary_map(z):
            raise NotACycle("not a cycle")
        p = len(next(iter(z))) - 1
        return self.frame().decode(p, self._sum(self.complex.id_of(s) for s in z))

    def cocycle_fiber(self, tau: Simplex) -> frozenset:
        """All simplexes whose label contains the live critical simplex ``tau``."""
        gid = self.complex.id_of(tau)
        p = len(tau) - 1
        k = self.sequence.critical_ordinal(gid)
        if k < 0 or k not in self.live[p]:
            raise NotLive(f"{tau} is not a live critical simplex")
        return frozenset(self.complex.simplices[j] for j in self.carriers[p].get(k, ()))


def annotate(W: MorseSequence, pick: str = "min-lex") -> Annotator:
    return Annotator(W, pick).run()
