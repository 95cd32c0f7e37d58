"""Morse frames: the reference, the co-reference and gradient paths.

A frame maps each p-simplex of ``K`` to a chain of critical p-simplexes.
The reference is filled by one left-to-right scan of the sequence, the
co-reference by one right-to-left scan (see :mod:`morseframes.kernels`).
Gradient-path counting is a separate brute-force enumeration over the
gradient vector field, used to cross-check both scans.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from . import kernels
from .complex import Simplex, SimplexNotInComplex, chain_dimension, sorted_chain
from .sequence import MorseSequence

DEFAULT_PATH_BUDGET = 10**6


class Frame:
    """Labels of every simplex, stored as bitmasks over critical ordinals."""

    def __init__(self, sequence: MorseSequence, masks: list[int], kind: str = "frame"):
        self.sequence = sequence
        self.complex = sequence.complex
        self.masks = masks
        self.kind = kind

    def __eq__(self, other) -> bool:
        if not isinstance(other, Frame) or self.complex != other.complex:
            return False
        return self.items_raw() == other.items_raw()

    def items_raw(self) -> list[tuple[Simplex, frozenset]]:
        return list(self.items())

    def __repr__(self) -> str:
        return f"Frame(kind={self.kind!r}, simplexes={len(self.masks)})"

    def decode(self, p: int, mask: int) -> frozenset:
        ids = self.sequence.critical_ids(p)
        sx = self.complex.simplices
        out = []
        while mask:
            low = mask & -mask
            out.append(sx[ids[low.bit_length() - 1]])
            mask ^= low
        return frozenset(out)

    def encode(self, chain: Iterable[Simplex]) -> int:
        mask = 0
        for s in chain:
            k = self.sequence.critical_ordinal(self.complex.id_of(s))
            if k < 0:
                raise ValueError(f"{s} is not critical")
            mask ^= 1 << k
        return mask

    def mask(self, s: Simplex) -> int:
        return self.masks[self.complex.id_of(s)]

    def __getitem__(self, s: Simplex) -> frozenset:
        s = tuple(s)
        return self.decode(len(s) - 1, self.mask(s))

    def image_mask(self, chain: Iterable[Simplex]) -> int:
        acc = 0
        for s in chain:
            acc ^= self.mask(s)
        return acc

    def image(self, chain: Iterable[Simplex]) -> frozenset:
        """Linear extension: the sum of the labels of the members of ``chain``."""
        chain = frozenset(chain)
        p = chain_dimension(chain)
        if p is None:
            return frozenset()
        return self.decode(p, self.image_mask(chain))

    def items(self) -> Iterator[tuple[Simplex, frozenset]]:
        """``(simplex, label)`` in the canonical (dimension, lexicographic) order."""
        for gid, s in enumerate(self.complex.simplices):
            yield s, self.decode(len(s) - 1, self.masks[gid])

    def fiber(self, nu: Simplex) -> frozenset:
        """All simplexes whose label contains the critical simplex ``nu``."""
        gid = self.complex.id_of(nu)
        k = self.sequence.critical_ordinal(gid)
        if k < 0:
            raise ValueError(f"{nu} is not critical")
        bit = 1 << k
        return frozenset(
            self.complex.simplices[i] for i in self.complex.ids(len(nu) - 1) if self.masks[i] & bit
        )


def reference(W: MorseSequence, backend: str | None = None) -> Frame:
    W.require_valid()
    return Frame(W, kernels.reference_masks(W, backend), "reference")


def coreference(W: MorseSequence, backend: str | None = None) -> Frame:
    W.require_valid()
    return Frame(W, kernels.coreference_masks(W, backend), "coreference")


# -- gradient paths -----------------------------------------------------------

class PathBudgetExceeded(RuntimeError):
    pass


def count_gradient_paths(
    W: MorseSequence,
    source: Simplex,
    target: Simplex,
    direction: str = "gradient",
    budget: int = DEFAULT_PATH_BUDGET,
) -> int:
    """Number of gradient (or co-gradient) paths from ``source`` to ``target``.

    Paths are enumerated one by one with an explicit depth-first stack.  The
    trivial path counts when ``source == target``.  Raises
    :class:`PathBudgetExceeded` after ``budget`` node expansions.
    """
    K = W.complex
    a, b = K.id_of(source), K.id_of(target)
    if len(source) != len(target):
        raise ValueError("source and target must have the same dimension")
    if direction not in ("gradient", "co-gradient"):
        raise ValueError(f"unknown direction {direction!r}")
    up, _ = W.pairing()
    faces = K.faces
    count = 0
    expansions = 0
    stack = [a]
    while stack:
        s = stack.pop()
        expansions += 1
        if expansions > budget:
            raise PathBudgetExceeded(f"more than {budget} expansions from {source}")
        if s == b:
            count += 1
        if direction == "gradient":
            # s -> partner t -> any other face of t
            t = up[s]
            if t >= 0:
                stack.extend(f for f in faces[t] if f != s)
        else:
            # t -> face r of t paired upwards with some t' != t -> t'
            for r in faces[s]:
                t2 = up[r]
                if t2 >= 0 and t2 != s:
                    stack.append(t2)
    return count


# -- property checks ----------------------------------------------------------

def check_duality(W: MorseSequence, ref: Frame | None = None, coref: Frame | None = None):
    """Check ``sigma in ref(boundary tau)  <=>  tau in coref(coboundary sigma)``.

    Runs over all critical ``sigma`` (dim p) and ``tau`` (dim p+1).  Returns
    ``None`` or the first failing pair.
    """
    ref = ref or reference(W)
    coref = coref or coreference(W)
    K = W.complex
    sx = K.simplices
    for p in range(K.dim):
        for s in W.critical_ids(p):
            down = coref.image_mask(sx[j] for j in K.cofaces[s])
            for t in W.critical_ids(p + 1):
                left = bool(ref.image_mask(sx[f] for f in K.faces[t]) >> W.critical_ordinal(s) & 1)
                right = bool(down >> W.critical_ordinal(t) & 1)
                if left != right:
                    return sx[s], sx[t]
    return None


def reference_consistency_violations(W: MorseSequence, ref: Frame, coref: Frame) -> list:
    """Regular pairs where ``ref(boundary tau)`` or ``coref(coboundary sigma)`` is nonzero."""
    K = W.complex
    bad = []
    for a, b in zip(W.lo, W.hi):
        if b < 0:
            continue
        if ref.image_mask(K.simplices[f] for f in K.faces[b]):
            bad.append(("reference", K.simplices[a], K.simplices[b]))
        if coref.image_mask(K.simplices[g] for g in K.cofaces[a]):
            bad.append(("coreference", K.simplices[a], K.simplices[b]))
    return bad


def limit_case_violations(W: MorseSequence, ref: Frame, coref: Frame) -> list:
    K = W.complex
    bad = []
    for gid, s in enumerate(K.simplices):
        if W.critical_ordinal(gid) >= 0:
            continue
        if not K.cofaces[gid] and ref.masks[gid]:
            bad.append(("facet", s))
        if len(s) == 1 and coref.masks[gid]:
            bad.append(("vertex", s))
    return bad


def path_parity_violations(
    W: MorseSequence,
    ref: Frame | None = None,
    coref: Frame | None = None,
    budget: int = DEFAULT_PATH_BUDGET,
) -> list:
    """Pairs ``(sigma, nu)`` where label membership disagrees with path-count parity."""
    ref = ref or reference(W)
    coref = coref or coreference(W)
    K = W.complex
    sx = K.simplices
    bad = []
    for p in range(K.dim + 1):
        crit = W.critical_ids(p)
        for s in K.ids(p):
            for nu in crit:
                k = W.critical_ordinal(nu)
                grad = count_gradient_paths(W, sx[s], sx[nu], "gradient", budget)
                if bool(ref.masks[s] >> k & 1) != (grad % 2 == 1):
                    bad.append(("gradient", sx[s], sx[nu], grad))
                cograd = count_gradient_paths(W, sx[nu], sx[s], "co-gradient", budget)
                if bool(coref.masks[s] >> k & 1) != (cograd % 2 == 1):
                    bad.append(("co-gradient", sx[s], sx[nu], cograd))
    return bad


def format_label(chain: Iterable[Simplex]) -> str:
    members = sorted_chain(chain)
    if not members:
        return "0"
    return " ; ".join(" ".join(map(str, s)) for s in members)


__all__ = [
    "Frame",
    "PathBudgetExceeded",
    "SimplexNotInComplex",
    "check_duality",
    "count_gradient_paths",
    "coreference",
    "format_label",
    "limit_case_violations",
    "path_parity_violations",
    "reference",
    "reference_consistency_violations",
]
