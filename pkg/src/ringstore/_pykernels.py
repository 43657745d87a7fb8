"""Pure-Python (numpy) elimination kernels over GF(p).

Every routine works on a C-contiguous int64 array whose entries already lie
in [0, p).  Pivoting is leftmost column, first nonzero row, so results are
identical to the compiled kernels bit for bit.
"""

import numpy as np

NAME = "python"


def rref(a, p):
    """Reduce ``a`` in place to reduced row echelon form.

    Returns the list of 0-based pivot columns.
    """
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p) if p > 2 else 1
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        factors = a[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] = (
                a[np.ix_(hit, np.arange(c, cols))]
                - np.outer(factors[hit], a[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return pivots


def rank(a, p):
    """Rank of ``a`` over GF(p); ``a`` is destroyed."""
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            inv = pow(int(a[r, c]), p - 2, p) if p > 2 else 1
            f = (a[below, c] * inv) % p
            a[below, c:] = (a[below, c:] - np.outer(f, a[r, c:])) % p
        r += 1
    return r


def window_ranks(a, starts, width, p):
    """Ranks of the cyclic column windows ``a[:, s:s+width]`` (wrapping).

    ``starts`` holds 0-based column offsets.  ``a`` is left untouched.
    """
    cols = a.shape[1]
    out = np.empty(len(starts), dtype=np.int64)
    for idx, s in enumerate(starts):
        sel = (np.arange(width) + s) % cols
        out[idx] = rank(np.ascontiguousarray(a[:, sel]), p)
    return out
