# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled frame scans.

Same contract as ``_pykernels``: return one Python int bitmask per simplex.
Labels are sparse: each one is a sorted run of critical ordinals in an
append-only arena (a label is written exactly once per scan), and a sum of
labels is a symmetric-difference merge.  Work is proportional to the total
label size, not to the number of critical simplexes times n.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy, memset

cnp.import_array()


cdef struct Buf:
    int64_t *data
    Py_ssize_t size
    Py_ssize_t cap


cdef int _reserve(Buf *b, Py_ssize_t need) noexcept nogil:
    cdef Py_ssize_t cap
    cdef int64_t *p
    if need <= b.cap:
        return 0
    cap = b.cap * 2 if b.cap else 64
    while cap < need:
        cap *= 2
    p = <int64_t *> realloc(b.data, cap * sizeof(int64_t))
    if p == NULL:
        return -1
    b.data = p
    b.cap = cap
    return 0


cdef int _symdiff(Buf *out, const int64_t *x, Py_ssize_t nx, const int64_t *y, Py_ssize_t ny) noexcept nogil:
    cdef Py_ssize_t i = 0, j = 0, k = 0
    if _reserve(out, nx + ny) < 0:
        return -1
    while i < nx and j < ny:
        if x[i] < y[j]:
            out.data[k] = x[i]
            i += 1
            k += 1
        elif y[j] < x[i]:
            out.data[k] = y[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < nx:
        out.data[k] = x[i]
        i += 1
        k += 1
    while j < ny:
        out.data[k] = y[j]
        j += 1
        k += 1
    out.size = k
    return 0


cdef int _scan(const int64_t[:] lo, const int64_t[:] hi, const int64_t[:] crit,
               const int64_t[:] ptr, const int64_t[:] idx,
               int64_t[:] start, int64_t[:] length, Buf *arena, bint reverse) noexcept nogil:
    cdef Py_ssize_t m = lo.shape[0]
    cdef Py_ssize_t step, i, j
    cdef int64_t a, b, src, dst, other
    cdef Buf acc, tmp, swap
    cdef int status = 0
    acc.data = NULL
    acc.size = acc.cap = 0
    tmp.data = NULL
    tmp.size = tmp.cap = 0
    for step in range(m):
        i = m - 1 - step if reverse else step
        a = lo[i]
        b = hi[i]
        if b < 0:
            if _reserve(arena, arena.size + 1) < 0:
                status = -1
                break
            start[a] = arena.size
            length[a] = 1
            arena.data[arena.size] = crit[a]
            arena.size += 1
            continue
        # reference: label(a) = sum of faces of b other than a
        # coreference: label(b) = sum of cofaces of a other than b
        if reverse:
            src = a
            dst = b
        else:
            src = b
            dst = a
        acc.size = 0
        for j in range(ptr[src], ptr[src + 1]):
            other = idx[j]
            if other == dst or length[other] == 0:
                continue
            if _symdiff(&tmp, acc.data, acc.size, arena.data + start[other], length[other]) < 0:
                status = -1
                break
            swap = acc
            acc = tmp
            tmp = swap
        if status < 0 or _reserve(arena, arena.size + acc.size) < 0:
            status = -1
            break
        start[dst] = arena.size
        length[dst] = acc.size
        if acc.size:
            memcpy(arena.data + arena.size, acc.data, acc.size * sizeof(int64_t))
            arena.size += acc.size
    free(acc.data)
    free(tmp.data)
    return status


cdef list _unpack(const int64_t *arena, const int64_t[:] start, const int64_t[:] length):
    cdef Py_ssize_t n = start.shape[0]
    cdef Py_ssize_t i, k, nbytes, cap = 0
    cdef int64_t bit
    cdef unsigned char *bits = NULL
    cdef object one = 1
    out = [0] * n
    try:
        for i in range(n):
            if length[i] == 0:
                continue
            if length[i] == 1:
                out[i] = one << <object> arena[start[i]]
                continue
            # runs are sorted, so the last ordinal is the top bit
            nbytes = arena[start[i] + length[i] - 1] // 8 + 1
            if nbytes > cap:
                free(bits)
                bits = <unsigned char *> malloc(nbytes)
                if bits == NULL:
                    raise MemoryError("label unpack")
                cap = nbytes
            memset(bits, 0, nbytes)
            for k in range(start[i], start[i] + length[i]):
                bit = arena[k]
                bits[bit >> 3] |= <unsigned char> (1 << (bit & 7))
            out[i] = int.from_bytes(bits[:nbytes], "little")
    finally:
        free(bits)
    return out


cdef list _run(W, bint reverse):
    K = W.complex
    fptr, fidx, cptr, cidx = K.csr()
    lo = np.asarray(W.lo, dtype=np.int64)
    hi = np.asarray(W.hi, dtype=np.int64)
    crit = np.asarray(W._critical_index()[1], dtype=np.int64)
    start = np.zeros(len(K), dtype=np.int64)
    length = np.zeros(len(K), dtype=np.int64)
    cdef Buf arena
    arena.data = NULL
    arena.size = arena.cap = 0
    cdef int status
    try:
        if reverse:
            status = _scan(lo, hi, crit, cptr, cidx, start, length, &arena, True)
        else:
            status = _scan(lo, hi, crit, fptr, fidx, start, length, &arena, False)
        if status < 0:
            raise MemoryError("label arena")
        return _unpack(arena.data, start, length)
    finally:
        free(arena.data)


def reference_masks(W):
    return _run(W, False)


def coreference_masks(W):
    return _run(W, True)
