"""Pure-Python frame scans.

Labels are Python ints used as bitsets over the critical simplexes of the
label's dimension (bit k = k-th critical simplex in lexicographic order).
"""
from __future__ import annotations


def reference_masks(W) -> list[int]:
    K = W.complex
    faces = K.faces
    crit = W._critical_index()[1]
    masks = [0] * len(K)
    for a, b in zip(W.lo, W.hi):
        if b < 0:
            masks[a] = 1 << crit[a]
            continue
        acc = 0
        for f in faces[b]:
            if f != a:
                acc ^= masks[f]
        masks[a] = acc
    return masks


def coreference_masks(W) -> list[int]:
    K = W.complex
    cofaces = K.cofaces
    crit = W._critical_index()[1]
    masks = [0] * len(K)
    for a, b in zip(reversed(W.lo), reversed(W.hi)):
        if b < 0:
            masks[a] = 1 << crit[a]
            continue
        acc = 0
        for g in cofaces[a]:
            if g != b:
                acc ^= masks[g]
        masks[b] = acc
    return masks
