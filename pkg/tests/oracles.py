"""Brute-force reference computations, independent of the elimination kernels."""

import itertools
import math


def brute_inverse(a, q):
    return next(x for x in range(1, q) if (a * x) % q == 1)


def span_size(columns, q):
    """Number of distinct vectors in the span of ``columns`` (by enumeration)."""
    if not columns:
        return 1
    dim = len(columns[0])
    seen = set()
    for coeffs in itertools.product(range(q), repeat=len(columns)):
        seen.add(tuple(sum(c * col[i] for c, col in zip(coeffs, columns)) % q for i in range(dim)))
    return len(seen)


def brute_rank(rows, q):
    """Rank from the span size of the column set: |span| = q ** rank."""
    if not rows or not rows[0]:
        return 0
    cols = [list(c) for c in zip(*rows)]
    return round(math.log(span_size(cols, q), q))


def leibniz_det(m, q):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term *= m[i][p]
        total += term
    return total % q


def columns_independent(columns, q):
    return span_size(columns, q) == q ** len(columns)
