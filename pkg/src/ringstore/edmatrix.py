"""Euclidean-division (ED) matrices and the weakly MDS property.

An ED-matrix of size m0 x n (n >= m0) is built from the quotient chain of
``n`` and ``m0``: ``P0`` copies of the identity ``I_m0`` followed by the
transposed ED-matrix of the remainder, recursively, until a division is
exact.  Entries are 0/1 and the matrix lives over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

import numpy as np

from .galois import FieldMatrix, window_ranks

__all__ = [
    "EuclidChain",
    "EdMatrix",
    "WeaklyMds",
    "euclid_chain",
    "ed_matrix",
    "is_weakly_mds",
]


@dataclass(frozen=True)
class EuclidChain:
    """Quotients P_0..P_{t+1} and nonzero remainders M_1..M_{t+1} of (N, M_0)."""

    n_value: int
    m0: int
    quotients: tuple[int, ...]
    remainders: tuple[int, ...]

    @property
    def depth(self) -> int:
        """Number of remainder steps t + 1 (zero when M_0 divides N)."""
        return len(self.remainders)

    @property
    def gcd(self) -> int:
        return self.remainders[-1] if self.remainders else self.m0

    def divisors(self) -> tuple[int, ...]:
        """M_0, M_1, ..., the divisor used at each step."""
        return (self.m0,) + self.remainders

    def recompose(self) -> tuple[int, int]:
        """Fold the chain back up, returning (N, M_0)."""
        last = self.divisors()[-1]
        hi, lo = last * self.quotients[-1], last
        for p in reversed(self.quotients[:-1]):
            hi, lo = p * hi + lo, hi
        return hi, lo


def euclid_chain(n_value: int, m0: int) -> EuclidChain:
    if n_value < 1 or m0 < 1:
        raise ValueError(f"euclid_chain needs positive inputs, got ({n_value}, {m0})")
    if n_value < m0:
        raise ValueError(f"euclid_chain needs N >= M0, got N={n_value} < M0={m0}")
    quotients, remainders = [], []
    a, b = n_value, m0
    while True:
        p, r = divmod(a, b)
        quotients.append(p)
        if r == 0:
            break
        remainders.append(r)
        a, b = b, r
    chain = EuclidChain(n_value, m0, tuple(quotients), tuple(remainders))
    assert chain.gcd == gcd(n_value, m0)
    return chain


class WeaklyMds(NamedTuple):
    holds: bool
    failing_window: int | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class EdMatrix:
    matrix: FieldMatrix
    chain: EuclidChain

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def _ed_array(m: int, n: int) -> np.ndarray:
    p, s = divmod(n, m)
    blocks = [np.eye(m, dtype=np.int64)] * p
    if s:
        blocks.append(_ed_array(s, m).T)
    return np.hstack(blocks)


def ed_matrix(m0: int, n_value: int) -> EdMatrix:
    """The m0 x n_value ED-matrix over GF(2)."""
    chain = euclid_chain(n_value, m0)
    return EdMatrix(FieldMatrix._wrap(_ed_array(m0, n_value), 2), chain)


def is_weakly_mds(m: FieldMatrix | EdMatrix) -> WeaklyMds:
    """Check that every cyclic window of min(rows, cols) columns (or rows) is independent.

    Wide matrices are scanned over column windows of width ``rows``; tall
    ones over row windows of height ``cols``.  The witness is the 1-based
    start of the first failing window.
    """
    if isinstance(m, EdMatrix):
        m = m.matrix
    if m.rows > m.cols:
        m = m.T
    width = m.rows
    if width == 0:
        return WeaklyMds(True)
    starts = range(1, m.cols + 1)
    for s, r in zip(starts, window_ranks(m, starts, width)):
        if r < width:
            return WeaklyMds(False, s)
    return WeaklyMds(True)
