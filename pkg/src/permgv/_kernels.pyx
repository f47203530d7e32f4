# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: greedy sphere-exclusion scan, Cayley adjacency build, min pairwise distance."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, realloc, free
from libc.string cimport memcpy

cnp.import_array()

cdef int64_t _FACT[21]
_FACT[0] = 1
for _i in range(1, 21):
    _FACT[_i] = _FACT[_i - 1] * _i


cdef inline int64_t _rank(const uint8_t* p, int n) noexcept nogil:
    cdef int64_t r = 0
    cdef int i, j, smaller
    for i in range(n - 1):
        smaller = 0
        for j in range(i + 1, n):
            if p[j] < p[i]:
                smaller += 1
        r += smaller * _FACT[n - 1 - i]
    return r


cdef inline void _unrank(int64_t r, int n, uint8_t* out) noexcept nogil:
    cdef uint8_t pool[32]
    cdef int i, k, pos, size = n
    cdef int64_t f, idx
    for i in range(n):
        pool[i] = <uint8_t>i
    pos = 0
    for i in range(n - 1, -1, -1):
        f = _FACT[i]
        idx = r // f
        r = r % f
        out[pos] = pool[idx]
        for k in range(<int>idx, size - 1):
            pool[k] = pool[k + 1]
        size -= 1
        pos += 1


cdef inline bint _next_permutation(uint8_t* a, int n) noexcept nogil:
    cdef int i = n - 2, j, lo, hi
    cdef uint8_t t
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    lo = i + 1
    hi = n - 1
    while lo < hi:
        t = a[lo]; a[lo] = a[hi]; a[hi] = t
        lo += 1
        hi -= 1
    return True


cdef inline bint _conflicts(const uint8_t* kept, int64_t k, const uint8_t* cand, int n, int d) noexcept nogil:
    # newest words first: in scan order they are the likeliest to be close
    cdef int64_t w
    cdef int i, diff
    cdef const uint8_t* row
    for w in range(k - 1, -1, -1):
        row = kept + w * n
        diff = 0
        for i in range(n):
            if row[i] != cand[i]:
                diff += 1
                if diff >= d:
                    break
        if diff < d:
            return True
    return False


cdef inline bint _ball_hits(const uint8_t* bitmap, const uint8_t[:, ::1] B, const uint8_t* cand, int n) noexcept nogil:
    cdef Py_ssize_t b
    cdef int i
    cdef int64_t v
    cdef uint8_t tmp[32]
    for b in range(B.shape[0]):
        for i in range(n):
            tmp[i] = B[b, cand[i]]
        v = _rank(tmp, n)
        if bitmap[v >> 3] & (1 << (v & 7)):
            return True
    return False


def greedy_scan(int n, int d, order=None, ball=None):
    """Keep each scanned permutation whose distance to every kept word is >= d.

    With ``ball`` (all permutations at distance 1..d-1 from the identity),
    a candidate is tested by looking up ``pi o cand`` in a bitmap of kept
    ranks whenever the ball is smaller than the kept set.
    """
    if n < 1 or n > 20:
        raise ValueError("n out of range for the compiled kernel")
    cdef int64_t total, count, idx, r
    cdef int64_t k = 0, cap = 1024
    cdef uint8_t cand[32]
    cdef uint8_t* kept
    cdef uint8_t* grown
    cdef uint8_t* bitmap = NULL
    cdef int i
    cdef bint hit
    cdef cnp.int64_t[::1] ranks
    cdef const uint8_t[:, ::1] B
    cdef Py_ssize_t nb = 0
    cdef bint lexicographic = order is None

    total = _FACT[n]
    if lexicographic:
        count = total
    else:
        ranks = np.ascontiguousarray(order, dtype=np.int64)
        count = ranks.shape[0]
    if ball is not None and d > 2:
        B = np.ascontiguousarray(ball, dtype=np.uint8).reshape(-1, n)
        nb = B.shape[0]
        bitmap = <uint8_t*>calloc(total // 8 + 1, 1)
        if bitmap == NULL:
            raise MemoryError()

    kept = <uint8_t*>malloc(cap * n)
    if kept == NULL:
        free(bitmap)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                cand[i] = <uint8_t>i
            for idx in range(count):
                if not lexicographic:
                    r = ranks[idx]
                    _unrank(r, n, cand)
                else:
                    r = idx
                    if idx > 0:
                        _next_permutation(cand, n)
                if d > 2:
                    if bitmap != NULL and nb < k:
                        hit = _ball_hits(bitmap, B, cand, n)
                    else:
                        hit = _conflicts(kept, k, cand, n, d)
                    if hit:
                        continue
                if k == cap:
                    cap *= 2
                    grown = <uint8_t*>realloc(kept, cap * n)
                    if grown == NULL:
                        with gil:
                            raise MemoryError()
                    kept = grown
                memcpy(kept + k * n, cand, n)
                if bitmap != NULL:
                    bitmap[r >> 3] |= <uint8_t>(1 << (r & 7))
                k += 1
        out = np.empty((k, n), dtype=np.uint8)
        if k:
            memcpy(cnp.PyArray_DATA(out), kept, k * n)
        return out
    finally:
        free(kept)
        free(bitmap)


def build_adjacency(perms, ball):
    """Packed adjacency rows: vertex u joined to ``pi o perms[u]`` for each pi in ``ball``."""
    cdef const uint8_t[:, ::1] P = np.ascontiguousarray(perms, dtype=np.uint8)
    cdef const uint8_t[:, ::1] B = np.ascontiguousarray(ball, dtype=np.uint8).reshape(-1, P.shape[1])
    cdef Py_ssize_t nv = P.shape[0], n = P.shape[1], nb = B.shape[0]
    cdef Py_ssize_t words = (nv + 63) // 64
    adj_arr = np.zeros((nv, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] adj = adj_arr
    cdef Py_ssize_t u, b, i
    cdef int64_t v
    cdef uint8_t tmp[32]
    with nogil:
        for u in range(nv):
            for b in range(nb):
                for i in range(n):
                    tmp[i] = B[b, P[u, i]]
                v = _rank(tmp, <int>n)
                adj[u, v >> 6] |= (<uint64_t>1) << (v & 63)
    return adj_arr


def min_distance(words):
    """Smallest pairwise Hamming distance and the first pair (i < j) attaining it."""
    cdef const uint8_t[:, ::1] W = np.ascontiguousarray(words, dtype=np.uint8)
    cdef Py_ssize_t count = W.shape[0], n = W.shape[1]
    cdef Py_ssize_t i, j, p
    cdef int diff, best = <int>n
    cdef Py_ssize_t bi = -1, bj = -1
    with nogil:
        for i in range(count - 1):
            for j in range(i + 1, count):
                diff = 0
                for p in range(n):
                    if W[i, p] != W[j, p]:
                        diff += 1
                if bi < 0 or diff < best:
                    best = diff
                    bi = i
                    bj = j
                    if best == 0:
                        break
            if best == 0:
                break
    return best, bi, bj
