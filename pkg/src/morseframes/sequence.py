"""Morse sequences: building them with the maximal schemes and checking them.

A Morse sequence on ``K`` is stored simplex-wise, as a list of steps that
are either a filling (:class:`Critical`) or an expansion (:class:`Regular`).
Internally each step is a pair of global simplex ids ``(lo, hi)`` with
``hi == -1`` for a critical step.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import Complex, ComplexError, Simplex

ORDERS = ("lex", "random")


@dataclass(frozen=True)
class Critical:
    sigma: Simplex


@dataclass(frozen=True)
class Regular:
    sigma: Simplex
    tau: Simplex


Step = Critical | Regular


@dataclass(frozen=True)
class Violation:
    """First violated condition found while replaying a sequence."""

    index: int
    reason: str

    def __str__(self) -> str:
        return f"step {self.index}: {self.reason}"


class InvalidSequence(ComplexError):
    def __init__(self, violation: Violation):
        super().__init__(f"invalid Morse sequence at {violation}")
        self.violation = violation


class MorseSequence:
    """A simplex-wise Morse sequence on a complex.

    ``steps`` yields :class:`Critical` / :class:`Regular` objects; the raw id
    form lives in ``lo`` and ``hi``.  Construction does not validate; call
    :func:`validate` or :meth:`require_valid`.
    """

    def __init__(self, K: Complex, lo: Sequence[int], hi: Sequence[int]):
        self.complex = K
        self.lo = list(lo)
        self.hi = list(hi)
        self._valid: bool | None = None
        self._crit = None

    @classmethod
    def from_steps(cls, K: Complex, steps: Iterable[Step]) -> "MorseSequence":
        lo, hi = [], []
        for st in steps:
            if isinstance(st, Critical):
                lo.append(_lookup(K, st.sigma))
                hi.append(-1)
            else:
                lo.append(_lookup(K, st.sigma))
                hi.append(_lookup(K, st.tau))
        return cls(K, lo, hi)

    def __len__(self) -> int:
        return len(self.lo)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MorseSequence)
            and self.complex == other.complex
            and self.lo == other.lo
            and self.hi == other.hi
        )

    @property
    def steps(self) -> list[Step]:
        sx = self.complex.simplices
        return [
            Critical(sx[a]) if b < 0 else Regular(sx[a], sx[b])
            for a, b in zip(self.lo, self.hi)
        ]

    def require_valid(self) -> "MorseSequence":
        if self._valid is None:
            v = validate(self)
            self._valid = v is None
            if v is not None:
                self._violation = v
        if not self._valid:
            raise InvalidSequence(self._violation)
        return self

    # -- derived data ---------------------------------------------------------
    def gradient_vector_field(self) -> frozenset:
        sx = self.complex.simplices
        return frozenset((sx[a], sx[b]) for a, b in zip(self.lo, self.hi) if b >= 0)

    def pairing(self) -> tuple[list[int], list[int]]:
        """``up[s]``: partner coface of a lower regular simplex, ``down[t]``: partner face."""
        n = len(self.complex)
        up = [-1] * n
        down = [-1] * n
        for a, b in zip(self.lo, self.hi):
            if b >= 0:
                up[a] = b
                down[b] = a
        return up, down

    def _critical_index(self):
        if self._crit is None:
            K = self.complex
            by_dim: list[list[int]] = [[] for _ in range(K.dim + 1)]
            for a, b in zip(self.lo, self.hi):
                if b < 0:
                    by_dim[K.dim_of(a)].append(a)
            order = [-1] * len(K)
            for ids in by_dim:
                ids.sort()
                for k, gid in enumerate(ids):
                    order[gid] = k
            self._crit = (by_dim, order)
        return self._crit

    def critical_ids(self, p: int) -> list[int]:
        """Global ids of critical p-simplexes in lexicographic order."""
        by_dim = self._critical_index()[0]
        return by_dim[p] if 0 <= p < len(by_dim) else []

    def critical_ordinal(self, gid: int) -> int:
        """Index of a critical simplex in its dimension's basis, or -1."""
        return self._critical_index()[1][gid]

    def is_critical(self, s: Simplex) -> bool:
        return self.critical_ordinal(self.complex.id_of(s)) >= 0

    def critical_counts(self) -> list[int]:
        return [len(self.critical_ids(p)) for p in range(self.complex.dim + 1)]


def _lookup(K: Complex, s) -> int:
    s = tuple(s)
    if s not in K:
        return -2 - len(s)  # sentinel: reported by validate
    return K.id_of(s)


def critical_simplexes(W: MorseSequence) -> list[list[Simplex]]:
    """Critical simplexes of ``W`` grouped by dimension."""
    sx = W.complex.simplices
    return [[sx[i] for i in W.critical_ids(p)] for p in range(W.complex.dim + 1)]


def validate(W: MorseSequence) -> Violation | None:
    """Replay ``W`` from the empty complex; return the first violation or ``None``."""
    K = W.complex
    faces = K.faces
    present = bytearray(len(K))
    for i, (a, b) in enumerate(zip(W.lo, W.hi)):
        if a < 0 or (b < 0 and b != -1):
            return Violation(i, "simplex not in complex")
        if b == -1:
            if present[a]:
                return Violation(i, f"duplicate simplex {K.simplices[a]}")
            missing = [f for f in faces[a] if not present[f]]
            if missing:
                return Violation(
                    i, f"premature filling of {K.simplices[a]}: face {K.simplices[missing[0]]} absent"
                )
            present[a] = 1
            continue
        sa, sb = K.simplices[a], K.simplices[b]
        if len(sb) != len(sa) + 1 or a not in faces[b]:
            return Violation(i, f"{sa} is not a facet of {sb}")
        for s in (a, b):
            if present[s]:
                return Violation(i, f"duplicate simplex {K.simplices[s]}")
        missing = [f for f in faces[a] if not present[f]]
        missing += [f for f in faces[b] if f != a and not present[f]]
        if missing:
            return Violation(
                i, f"({sa}, {sb}) is not a free pair: face {K.simplices[missing[0]]} absent"
            )
        present[a] = present[b] = 1
    if not all(present):
        absent = next(j for j, x in enumerate(present) if not x)
        return Violation(len(W.lo), f"final complex misses {K.simplices[absent]}")
    return None


class _Pool:
    """Candidate pool: a heap for ``lex`` or a list with uniform draws for ``random``."""

    def __init__(self, rng: random.Random | None):
        self.rng = rng
        self.items: list = []
        self.seen: set = set()

    def push(self, item) -> None:
        if self.rng is None:
            heapq.heappush(self.items, item)
        elif item not in self.seen:
            self.seen.add(item)
            self.items.append(item)

    def pop_valid(self, is_valid):
        items = self.items
        if self.rng is None:
            while items:
                item = heapq.heappop(items)
                if is_valid(item):
                    return item
            return None
        while items:
            k = self.rng.randrange(len(items))
            items[k], items[-1] = items[-1], items[k]
            item = items.pop()
            self.seen.discard(item)
            if is_valid(item):
                return item
        return None


def _rng(order: str, seed: int) -> random.Random | None:
    if order == "lex":
        return None
    if order == "random":
        return random.Random(seed)
    raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")


def increasing_scheme(K: Complex, order: str = "lex", seed: int = 0) -> MorseSequence:
    """Maximal increasing scheme: fill only when no expansion is available.

    ``lex`` takes the smallest candidate pair ``(sigma, tau)``, and for
    fillings the smallest simplex of minimal dimension.  ``random`` draws
    uniformly among the same candidate sets.
    """
    rng = _rng(order, seed)
    n = len(K)
    faces, cofaces = K.faces, K.cofaces
    missing = [len(f) for f in faces]
    present = bytearray(n)
    pairs = _Pool(rng)
    fills = [_Pool(rng) for _ in range(K.dim + 1)]
    lo: list[int] = []
    hi: list[int] = []

    def absent_face(t: int) -> int:
        for f in faces[t]:
            if not present[f]:
                return f
        return -1

    def on_ready(s: int) -> None:
        # s absent with its whole boundary present
        fills[len(K.simplices[s]) - 1].push(s)
        for t in cofaces[s]:
            if missing[t] == 1:
                pairs.push((s, t))

    def add(s: int) -> None:
        present[s] = 1
        for t in cofaces[s]:
            missing[t] -= 1
            if present[t]:
                continue
            if missing[t] == 0:
                on_ready(t)
            elif missing[t] == 1:
                f = absent_face(t)
                if missing[f] == 0:
                    pairs.push((f, t))

    def pair_ok(item) -> bool:
        s, t = item
        return not present[s] and not present[t] and missing[t] == 1 and missing[s] == 0

    for v in K.ids(0):
        on_ready(v)
    count = 0
    while count < n:
        item = pairs.pop_valid(pair_ok)
        if item is not None:
            s, t = item
            present[t] = 1
            add(s)
            add(t)
            lo.append(s)
            hi.append(t)
            count += 2
            continue
        for pool in fills:
            s = pool.pop_valid(lambda x: not present[x])
            if s is not None:
                break
        else:
            raise RuntimeError("increasing scheme stalled")  # unreachable for a complex
        add(s)
        lo.append(s)
        hi.append(-1)
        count += 1
    W = MorseSequence(K, lo, hi)
    W._valid = True
    return W


def decreasing_scheme(K: Complex, order: str = "lex", seed: int = 0) -> MorseSequence:
    """Maximal decreasing scheme: perforate only when no collapse is available.

    Collapses take the free pair with the smallest free face under ``lex``;
    a perforation removes the first facet of maximal dimension.  The removal
    order, reversed, is the returned sequence.
    """
    rng = _rng(order, seed)
    n = len(K)
    faces, cofaces = K.faces, K.cofaces
    degree = [len(c) for c in cofaces]
    present = bytearray(b"\x01") * n
    free = _Pool(rng)
    facets = [_Pool(rng) for _ in range(K.dim + 1)]
    removed_lo: list[int] = []
    removed_hi: list[int] = []

    def live_coface(s: int) -> int:
        for t in cofaces[s]:
            if present[t]:
                return t
        return -1

    def remove(s: int) -> None:
        present[s] = 0
        for f in faces[s]:
            degree[f] -= 1
            if not present[f]:
                continue
            if degree[f] == 1:
                free.push(f)
            elif degree[f] == 0:
                facets[len(K.simplices[f]) - 1].push(f)

    for s in range(n):
        if degree[s] == 1:
            free.push(s)
        elif degree[s] == 0:
            facets[len(K.simplices[s]) - 1].push(s)

    count = 0
    while count < n:
        s = free.pop_valid(lambda x: present[x] and degree[x] == 1)
        if s is not None:
            t = live_coface(s)
            present[s] = 0
            remove(t)
            remove(s)
            removed_lo.append(s)
            removed_hi.append(t)
            count += 2
            continue
        for pool in reversed(facets):
            s = pool.pop_valid(lambda x: present[x] and degree[x] == 0)
            if s is not None:
                break
        else:
            raise RuntimeError("decreasing scheme stalled")
        remove(s)
        removed_lo.append(s)
        removed_hi.append(-1)
        count += 1
    W = MorseSequence(K, removed_lo[::-1], removed_hi[::-1])
    W._valid = True
    return W


SCHEMES = {"increasing": increasing_scheme, "decreasing": decreasing_scheme}


def build_sequence(K: Complex, scheme: str = "increasing", order: str = "lex", seed: int = 0) -> MorseSequence:
    try:
        fn = SCHEMES[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {tuple(SCHEMES)}") from None
    return fn(K, order, seed)
