# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled elimination kernels over GF(p).

Same contracts as ``ringstore._pykernels``; entries must lie in [0, p) and
p < 2**31 so products fit in int64.
"""

import numpy as np
from libc.stdint cimport int64_t

NAME = "cython"


cdef inline int64_t _inv(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


cdef inline void _swap_rows(int64_t[:, ::1] a, Py_ssize_t i, Py_ssize_t j,
                            Py_ssize_t c0) noexcept nogil:
    cdef Py_ssize_t c
    cdef int64_t tmp
    for c in range(c0, a.shape[1]):
        tmp = a[i, c]
        a[i, c] = a[j, c]
        a[j, c] = tmp


cdef Py_ssize_t _rank(int64_t[:, ::1] a, int64_t p) noexcept nogil:
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            _swap_rows(a, r, piv, c)
        inv = _inv(a[r, c], p)
        for i in range(r + 1, rows):
            if a[i, c] != 0:
                f = p - (a[i, c] * inv) % p
                for j in range(c, cols):
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        r += 1
    return r


def rref(int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` in place to reduced row echelon form; return pivot columns."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            _swap_rows(a, r, piv, c)
        inv = _inv(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = p - a[i, c]
                for j in range(c, cols):
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rank(int64_t[:, ::1] a, int64_t p):
    """Rank of ``a`` over GF(p); ``a`` is destroyed."""
    return _rank(a, p)


def window_ranks(const int64_t[:, ::1] a, starts, Py_ssize_t width, int64_t p):
    """Ranks of the cyclic column windows of ``a`` starting at ``starts``."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t n = len(starts), idx, i, j, s
    cdef int64_t[:, ::1] buf = np.empty((rows, width), dtype=np.int64)
    cdef int64_t[::1] st = np.asarray(starts, dtype=np.int64)
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] res = out
    with nogil:
        for idx in range(n):
            s = st[idx]
            for i in range(rows):
                for j in range(width):
                    buf[i, j] = a[i, (s + j) % cols]
            res[idx] = _rank(buf, p)
    return out
