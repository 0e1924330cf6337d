# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels; same API as the ``pure`` backend.

Masks cross the Python boundary as arbitrary-precision ints and are
unpacked into little-endian uint64 word arrays internally.
"""

from cpython.bytes cimport PyBytes_AS_STRING
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

NAME = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef uint64_t* _words_from_int(object bits, Py_ssize_t nwords, Py_ssize_t pad):
    # Little-endian byte order matches the word layout on every target we
    # build for; pad words stay zero.
    cdef bytes raw = bits.to_bytes(nwords << 3, "little")
    cdef uint64_t* buf = <uint64_t*> malloc((nwords + pad) * 8)
    if buf == NULL:
        raise MemoryError()
    memcpy(buf, PyBytes_AS_STRING(raw), nwords << 3)
    if pad:
        memset(buf + nwords, 0, pad * 8)
    return buf


cdef object _int_from_words(uint64_t* words, Py_ssize_t nwords):
    cdef bytes raw = (<char*> words)[: nwords << 3]
    return int.from_bytes(raw, "little")


def sumset_bits(shifts, bits, n):
    """OR of cyclic left-shifts of ``bits`` (mod n) by each shift."""
    cdef Py_ssize_t nn = n
    cdef Py_ssize_t W = (nn + 63) >> 6
    cdef Py_ssize_t Wd = ((2 * nn + 63) >> 6) + 2
    cdef uint64_t* B = _words_from_int(bits, W, 0)
    cdef uint64_t* D = <uint64_t*> malloc(Wd * 8)
    cdef uint64_t* acc = <uint64_t*> malloc(W * 8)
    if D == NULL or acc == NULL:
        free(B)
        if D != NULL:
            free(D)
        if acc != NULL:
            free(acc)
        raise MemoryError()
    memset(D, 0, Wd * 8)
    memset(acc, 0, W * 8)
    memcpy(D, B, W * 8)

    # Blit a second copy of B at bit offset n: D holds 2n bits with
    # D[i] == B[i mod n], so a cyclic shift is one contiguous extraction.
    cdef Py_ssize_t k, q
    cdef int r
    for k in range(W):
        q = (nn + (k << 6)) >> 6
        r = <int> ((nn + (k << 6)) & 63)
        D[q] |= B[k] << r
        if r:
            D[q + 1] |= B[k] >> (64 - r)

    cdef Py_ssize_t s, q0, a
    cdef object out
    try:
        for obj in shifts:
            a = obj
            s = nn - a  # a in [0, n); start of the shifted window in D
            q0 = s >> 6
            r = <int> (s & 63)
            if r == 0:
                for k in range(W):
                    acc[k] |= D[q0 + k]
            else:
                for k in range(W):
                    acc[k] |= (D[q0 + k] >> r) | (D[q0 + k + 1] << (64 - r))
        r = <int> (nn & 63)
        if r:
            acc[W - 1] &= (<uint64_t> 1 << r) - 1
        out = _int_from_words(acc, W)
    finally:
        free(B)
        free(D)
        free(acc)
    return out


def membership_count_scaled(bits, elems, r, n):
    """Count elements e with bit (r*e mod n) set in ``bits``."""
    cdef Py_ssize_t nn = n
    cdef Py_ssize_t W = (nn + 7) >> 3
    cdef bytes raw = bits.to_bytes(W, "little")
    cdef const unsigned char* view = <const unsigned char*> PyBytes_AS_STRING(raw)
    cdef uint64_t rr = r
    cdef uint64_t x
    cdef Py_ssize_t count = 0
    for obj in elems:
        x = (rr * <uint64_t> obj) % <uint64_t> nn
        if (view[x >> 3] >> (x & 7)) & 1:
            count += 1
    return count


cdef struct _Best:
    int64_t card
    int64_t k
    int64_t mask


cdef void _scan(uint64_t** rows, Py_ssize_t m, Py_ssize_t W,
                uint64_t* bufs, Py_ssize_t start, Py_ssize_t depth,
                int64_t mask, _Best* best) nogil:
    cdef Py_ssize_t j, k
    cdef uint64_t* parent
    cdef uint64_t* cur
    cdef int64_t card, kk, pm, lhs, rhs, diff
    cdef bint better
    for j in range(start, m):
        parent = bufs + (depth - 1) * W if depth else NULL
        cur = bufs + depth * W
        card = 0
        if depth:
            for k in range(W):
                cur[k] = parent[k] | rows[j][k]
                card += __builtin_popcountll(cur[k])
        else:
            for k in range(W):
                cur[k] = rows[j][k]
                card += __builtin_popcountll(cur[k])
        pm = mask | (<int64_t> 1 << j)
        kk = <int64_t> depth + 1
        if best.mask < 0:
            better = True
        else:
            lhs = card * best.k
            rhs = best.card * kk
            if lhs != rhs:
                better = lhs < rhs
            elif kk != best.k:
                better = kk > best.k
            else:
                diff = pm ^ best.mask
                better = (pm & (diff & (-diff))) != 0
        if better:
            best.card = card
            best.k = kk
            best.mask = pm
        _scan(rows, m, W, bufs, j + 1, depth + 1, pm, best)


def best_subset_union(shifted, n):
    """Full scan over nonempty subsets; see the pure backend docstring."""
    cdef Py_ssize_t m = len(shifted)
    if m == 0:
        raise ValueError("need at least one mask")
    if m > 62:
        raise ValueError("subset scan capped at 62 masks")
    cdef Py_ssize_t nn = n
    cdef Py_ssize_t W = (nn + 63) >> 6
    cdef uint64_t** rows = <uint64_t**> malloc(m * sizeof(uint64_t*))
    if rows == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(m):
        rows[i] = NULL
    cdef uint64_t* bufs = NULL
    cdef _Best best
    best.card = 0
    best.k = 0
    best.mask = -1
    try:
        for i in range(m):
            rows[i] = _words_from_int(shifted[i], W, 0)
        bufs = <uint64_t*> malloc(m * W * 8)
        if bufs == NULL:
            raise MemoryError()
        _scan(rows, m, W, bufs, 0, 0, 0, &best)
    finally:
        for i in range(m):
            if rows[i] != NULL:
                free(rows[i])
        free(rows)
        if bufs != NULL:
            free(bufs)
    return int(best.mask), int(best.card)
