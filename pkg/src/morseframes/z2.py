"""Dense Z2 linear algebra used as an independent homology oracle.

Nothing here touches Morse sequences or frames.  Matrices are small
(fixtures, random complexes, prefix complexes), so elimination is the plain
cubic algorithm on a ``numpy`` boolean array.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .complex import Complex, ComplexError, boundary, chain_dimension


class Z2Matrix:
    """A ``rows x cols`` matrix over Z2."""

    def __init__(self, rows: int, cols: int, entries: Iterable[tuple[int, int]] = ()):
        self.rows = rows
        self.cols = cols
        self.array = np.zeros((rows, cols), dtype=bool)
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            self.array[r, c] ^= True

    @classmethod
    def from_array(cls, array) -> "Z2Matrix":
        a = np.asarray(array).astype(bool)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        m = cls(a.shape[0], a.shape[1])
        m.array = a.copy()
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> frozenset:
        return frozenset(zip(*map(lambda x: x.tolist(), np.nonzero(self.array))))

    def __matmul__(self, other: "Z2Matrix") -> "Z2Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        prod = (self.array.astype(np.int64) @ other.array.astype(np.int64)) % 2
        return Z2Matrix.from_array(prod)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Z2Matrix)
            and self.shape == other.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __repr__(self) -> str:
        return f"Z2Matrix({self.rows}x{self.cols}, nnz={int(self.array.sum())})"

    def tolist(self) -> list[list[int]]:
        return self.array.astype(int).tolist()

    def transpose(self) -> "Z2Matrix":
        return Z2Matrix.from_array(self.array.T)


def row_reduce(m: Z2Matrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Columns are scanned left to right; the pivot is the topmost row, among
    those not yet used, holding a 1 in that column.
    """
    a = m.array.copy()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        k = r + int(hits[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Z2Matrix) -> int:
    return len(row_reduce(m)[1])


def kernel_basis(m: Z2Matrix) -> list[np.ndarray]:
    """Basis of ``{v : Mv = 0}``, one vector per free column."""
    reduced, pivots = row_reduce(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = np.zeros(m.cols, dtype=bool)
        v[free] = True
        for row, pc in enumerate(pivots):
            if reduced[row, free]:
                v[pc] = True
        basis.append(v)
    return basis


def image_membership(m: Z2Matrix, v) -> bool:
    """Whether ``v`` lies in the column span of ``m``."""
    v = np.asarray(v, dtype=bool)
    if v.shape != (m.rows,):
        raise ValueError(f"vector of length {v.shape[0] if v.ndim else 0} does not match {m.rows} rows")
    if m.rows == 0:
        return True
    augmented = Z2Matrix.from_array(np.column_stack([m.array, v]))
    return rank(augmented) == rank(m)


def boundary_matrix(K: Complex, p: int) -> Z2Matrix:
    """Matrix of the boundary operator on p-chains in the lexicographic bases."""
    cols = K.skeleton(p)
    rows = K.skeleton(p - 1)
    row_index = {s: i for i, s in enumerate(rows)}
    entries = [(row_index[f], j) for j, s in enumerate(cols) for f in boundary(s)]
    return Z2Matrix(len(rows), len(cols), entries)


def coboundary_matrix(K: Complex, p: int) -> Z2Matrix:
    """Matrix of the coboundary operator on p-cochains, built from inclusions."""
    cols = K.skeleton(p)
    rows = K.skeleton(p + 1)
    entries = [
        (i, j)
        for i, t in enumerate(rows)
        for j, s in enumerate(cols)
        if set(s) <= set(t)
    ]
    return Z2Matrix(len(rows), len(cols), entries)


def betti_numbers(K: Complex) -> list[int]:
    """Mod-2 Betti numbers ``dim ker d_p - rank d_{p+1}`` for ``0 <= p <= dim K``."""
    ranks = [rank(boundary_matrix(K, p)) for p in range(K.dim + 2)]
    return [K.count(p) - ranks[p] - ranks[p + 1] for p in range(K.dim + 1)]


betti_oracle = betti_numbers


def cobetti_numbers(K: Complex) -> list[int]:
    """Mod-2 cohomology ranks ``dim ker delta^p - rank delta^{p-1}``."""
    ranks = {p: rank(coboundary_matrix(K, p)) for p in range(-1, K.dim + 1)}
    ranks[-1] = 0
    return [K.count(p) - ranks[p] - ranks[p - 1] for p in range(K.dim + 1)]


def chain_vector(K: Complex, p: int, c) -> np.ndarray:
    v = np.zeros(K.count(p), dtype=bool)
    basis = {s: i for i, s in enumerate(K.skeleton(p))}
    for s in c:
        if s not in basis:
            raise ComplexError(f"{s} is not a {p}-simplex of the complex")
        v[basis[s]] ^= True
    return v


def vector_chain(K: Complex, p: int, v) -> frozenset:
    cells = K.skeleton(p)
    return frozenset(cells[i] for i in np.nonzero(np.asarray(v, bool))[0])


class NotACycle(ComplexError):
    pass


def _check_cycle(K: Complex, z, p: int) -> None:
    d = boundary_matrix(K, p).array.astype(np.int64)
    if ((d @ chain_vector(K, p, z).astype(np.int64)) % 2).any():
        raise NotACycle("not a cycle")


def homologous(K: Complex, z, z_prime) -> bool:
    """Whether the p-cycles ``z`` and ``z_prime`` have equal homology classes."""
    z, z_prime = frozenset(z), frozenset(z_prime)
    p = chain_dimension(z | z_prime)
    if p is None:
        return True
    _check_cycle(K, z, p)
    _check_cycle(K, z_prime, p)
    diff = chain_vector(K, p, z) ^ chain_vector(K, p, z_prime)
    return image_membership(boundary_matrix(K, p + 1), diff)


def is_coboundary(K: Complex, p: int, c) -> bool:
    """Whether the p-cochain ``c`` lies in the image of the coboundary from p-1."""
    v = chain_vector(K, p, c)
    if p == 0:
        return not v.any()
    return image_membership(coboundary_matrix(K, p - 1), v)
