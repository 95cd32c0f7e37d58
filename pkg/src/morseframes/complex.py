"""Finite simplicial complexes and Z2 chains.

Simplexes are sorted tuples of non-negative vertex ids.  A chain is a
``frozenset`` of simplexes of one dimension; addition is symmetric
difference (``^``).  A :class:`Complex` assigns every simplex a global id,
ordered by dimension and then lexicographically, so that ``ids[p]`` ranges
over ``K^(p)`` in the canonical basis order.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

Simplex = tuple[int, ...]
Chain = frozenset

ZERO: frozenset = frozenset()


class ComplexError(ValueError):
    pass


class SimplexNotInComplex(ComplexError):
    def __init__(self, simplex):
        super().__init__(f"simplex not in complex: {simplex}")
        self.simplex = simplex


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalise ``vertices`` into a simplex (sorted, duplicate-free tuple)."""
    vs = tuple(sorted(vertices))
    if not vs:
        raise ComplexError("empty simplex")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise ComplexError(f"duplicate vertex {a} in simplex")
    for v in vs:
        if not isinstance(v, (int, np.integer)) or v < 0:
            raise ComplexError(f"vertex ids must be non-negative integers, got {v!r}")
    return tuple(int(v) for v in vs)


def dimension(s: Simplex) -> int:
    return len(s) - 1


def boundary(s: Simplex) -> frozenset:
    """Codimension-1 faces of ``s``; the zero chain for a vertex."""
    if len(s) == 1:
        return ZERO
    return frozenset(s[:i] + s[i + 1:] for i in range(len(s)))


def chain_dimension(c: Iterable[Simplex]) -> int | None:
    """Common dimension of the members of ``c`` (``None`` for the zero chain)."""
    dims = {len(s) - 1 for s in c}
    if len(dims) > 1:
        raise ComplexError(f"mixed-dimension chain: dimensions {sorted(dims)}")
    return dims.pop() if dims else None


def add(*chains: Iterable[Simplex]) -> frozenset:
    out: set = set()
    for c in chains:
        out.symmetric_difference_update(c)
    return frozenset(out)


def boundary_map(c: Iterable[Simplex]) -> frozenset:
    c = frozenset(c)
    chain_dimension(c)
    out: set = set()
    for s in c:
        out.symmetric_difference_update(boundary(s))
    return frozenset(out)


class Complex:
    """An immutable simplicial complex.

    Build one with :func:`closure` (or :meth:`Complex.from_facets`).  The
    constructor itself trusts that ``simplices`` is downward closed.
    """

    def __init__(self, simplices: Iterable[Simplex]):
        ordered = sorted(set(simplices), key=lambda s: (len(s), s))
        self.simplices: list[Simplex] = ordered
        self._index = {s: i for i, s in enumerate(ordered)}
        self.dim = len(ordered[-1]) - 1 if ordered else -1
        offsets = [0] * (self.dim + 2)
        for s in ordered:
            offsets[len(s)] += 1
        for p in range(1, len(offsets)):
            offsets[p] += offsets[p - 1]
        self._offsets = offsets
        index = self._index
        faces: list[tuple[int, ...]] = []
        cofaces: list[list[int]] = [[] for _ in ordered]
        for i, s in enumerate(ordered):
            if len(s) == 1:
                faces.append(())
                continue
            f = tuple(index[s[:k] + s[k + 1:]] for k in range(len(s)))
            faces.append(f)
            for j in f:
                cofaces[j].append(i)
        self.faces = faces
        self.cofaces = [tuple(c) for c in cofaces]
        self._csr = None

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "Complex":
        return closure(facets)

    # -- lookup -------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(s) in self._index

    def __iter__(self):
        return iter(self.simplices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(tuple(self.simplices))

    def __repr__(self) -> str:
        return f"Complex(f_vector={self.f_vector()})"

    def id_of(self, s: Simplex) -> int:
        try:
            return self._index[tuple(s)]
        except KeyError:
            raise SimplexNotInComplex(tuple(s)) from None

    def dim_of(self, gid: int) -> int:
        return len(self.simplices[gid]) - 1

    def ids(self, p: int) -> range:
        """Global ids of ``K^(p)``; empty for ``p < 0`` or ``p > dim``."""
        if p < 0 or p > self.dim:
            return range(0)
        return range(self._offsets[p], self._offsets[p + 1])

    def offset(self, p: int) -> int:
        return self._offsets[p]

    def ordinal(self, s: Simplex) -> int:
        """Position of ``s`` within ``K^(dim s)`` in lexicographic order."""
        gid = self.id_of(s)
        return gid - self._offsets[len(self.simplices[gid]) - 1]

    def skeleton(self, p: int) -> list[Simplex]:
        return [self.simplices[i] for i in self.ids(p)]

    def count(self, p: int) -> int:
        return len(self.ids(p))

    def f_vector(self) -> tuple[int, ...]:
        return tuple(self.count(p) for p in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * n for p, n in enumerate(self.f_vector()))

    def facets(self) -> list[Simplex]:
        return [s for i, s in enumerate(self.simplices) if not self.cofaces[i]]

    # -- operators ----------------------------------------------------------
    def boundary(self, s: Simplex) -> frozenset:
        self.id_of(s)
        return boundary(tuple(s))

    def coboundary(self, s: Simplex) -> frozenset:
        gid = self.id_of(s)
        return frozenset(self.simplices[j] for j in self.cofaces[gid])

    def boundary_map(self, c: Iterable[Simplex]) -> frozenset:
        c = frozenset(c)
        for s in c:
            self.id_of(s)
        return boundary_map(c)

    def coboundary_map(self, c: Iterable[Simplex]) -> frozenset:
        c = frozenset(c)
        chain_dimension(c)
        out: set = set()
        for s in c:
            out.symmetric_difference_update(self.coboundary(s))
        return frozenset(out)

    # -- bitmask views (ordinal-indexed) ------------------------------------
    def chain_to_mask(self, c: Iterable[Simplex]) -> int:
        mask = 0
        for s in c:
            mask ^= 1 << self.ordinal(s)
        return mask

    def mask_to_chain(self, p: int, mask: int) -> frozenset:
        base = self._offsets[p] if 0 <= p <= self.dim else 0
        out = []
        while mask:
            low = mask & -mask
            out.append(self.simplices[base + low.bit_length() - 1])
            mask ^= low
        return frozenset(out)

    def csr(self):
        """Face and coface adjacency as numpy CSR arrays (built once)."""
        if self._csr is None:
            self._csr = (*_to_csr(self.faces), *_to_csr(self.cofaces))
        return self._csr


def _to_csr(rows: Sequence[Sequence[int]]):
    ptr = np.zeros(len(rows) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(r) for r in rows])
    idx = np.fromiter((j for r in rows for j in r), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


def closure(facets: Iterable[Iterable[int]]) -> Complex:
    """Downward closure of ``facets``.

    Raises :class:`ComplexError` naming the index of the first bad facet.
    """
    found: set[Simplex] = set()
    for i, f in enumerate(facets):
        try:
            s = simplex(f)
        except ComplexError as exc:
            raise ComplexError(f"facet {i}: {exc}") from None
        if s in found:
            continue
        for k in range(1, len(s) + 1):
            found.update(combinations(s, k))
    return Complex(found)


def sorted_chain(c: Iterable[Simplex]) -> list[Simplex]:
    return sorted(c, key=lambda s: (len(s), s))
