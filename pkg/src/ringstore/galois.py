"""Exact arithmetic over prime fields GF(q) and dense matrices over them.

Matrices are immutable wrappers around read-only int64 numpy arrays.  All
public indices are 1-based; elimination uses leftmost-pivot,
first-nonzero-row pivoting so every result downstream is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from .errors import DimensionError, FieldError, SpanError

MAX_ORDER = 2**31


@lru_cache(maxsize=None)
def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    p = max(n, 2)
    while not is_prime(p):
        p += 1
    return p


@dataclass(frozen=True)
class FieldOrder:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or not is_prime(int(self.q)):
            raise FieldError(f"field order must be prime, got {self.q!r}")
        if self.q >= MAX_ORDER:
            raise FieldError(f"field order {self.q} too large (limit 2**31)")
        object.__setattr__(self, "q", int(self.q))

    def __int__(self):
        return self.q


def _order(q) -> FieldOrder:
    return q if isinstance(q, FieldOrder) else FieldOrder(int(q))


@dataclass(frozen=True)
class FieldElement:
    value: int
    order: FieldOrder

    def __post_init__(self):
        if not isinstance(self.order, FieldOrder):
            object.__setattr__(self, "order", FieldOrder(int(self.order)))
        if not 0 <= self.value < self.order.q:
            raise FieldError(f"{self.value} is not in [0, {self.order.q})")
        object.__setattr__(self, "value", int(self.value))

    @property
    def q(self) -> int:
        return self.order.q

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.order != self.order:
                raise FieldError(f"order mismatch: GF({self.q}) vs GF({other.q})")
            return other
        return FieldElement(int(other) % self.q, self.order)

    def __add__(self, other):
        return FieldElement((self.value + self._coerce(other).value) % self.q, self.order)

    def __sub__(self, other):
        return FieldElement((self.value - self._coerce(other).value) % self.q, self.order)

    def __mul__(self, other):
        return FieldElement((self.value * self._coerce(other).value) % self.q, self.order)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.q, self.order)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise FieldError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, -1, self.q), self.order)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF{self.q}({self.value})"


_OPS = {
    "add": FieldElement.__add__,
    "sub": FieldElement.__sub__,
    "mul": FieldElement.__mul__,
}


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.order != b.order:
        raise FieldError(f"order mismatch: GF({a.q}) vs GF({b.q})")
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None
    return fn(a, b)


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


class FieldMatrix:
    """Dense, immutable matrix over GF(q)."""

    __slots__ = ("order", "_a")

    def __init__(self, entries, q):
        order = _order(q)
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2-D grid, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= order.q):
            raise FieldError(f"entries must lie in [0, {order.q})")
        self._init(np.ascontiguousarray(arr), order)

    def _init(self, arr, order):
        arr.setflags(write=False)
        self._a = arr
        self.order = order

    @classmethod
    def _wrap(cls, arr, q) -> FieldMatrix:
        m = cls.__new__(cls)
        m._init(np.ascontiguousarray(arr, dtype=np.int64), _order(q))
        return m

    @classmethod
    def identity(cls, n: int, q) -> FieldMatrix:
        return cls._wrap(np.eye(n, dtype=np.int64), q)

    @classmethod
    def zeros(cls, rows: int, cols: int, q) -> FieldMatrix:
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), q)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], q, dim: int | None = None) -> FieldMatrix:
        """Build a matrix whose j-th column is ``columns[j]``."""
        if not columns:
            return cls.zeros(dim or 0, 0, q)
        return cls(np.array(columns, dtype=np.int64).T, q)

    @classmethod
    def hstack(cls, mats: Iterable[FieldMatrix], rows: int | None = None, q=None) -> FieldMatrix:
        mats = list(mats)
        if not mats:
            return cls.zeros(rows or 0, 0, q)
        _same_field(*mats)
        if len({m.rows for m in mats}) != 1:
            raise DimensionError("hstack needs equal row counts")
        return cls._wrap(np.hstack([m._a for m in mats]), mats[0].order)

    @property
    def q(self) -> int:
        return self.order.q

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def T(self) -> FieldMatrix:
        return FieldMatrix._wrap(self._a.T, self.order)

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def column_lists(self) -> list[list[int]]:
        return self._a.T.tolist()

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(int(self._a[i - 1, j - 1]), self.order)

    def column(self, j: int) -> FieldMatrix:
        if not 1 <= j <= self.cols:
            raise IndexError(f"column {j} out of range 1..{self.cols}")
        return FieldMatrix._wrap(self._a[:, j - 1: j], self.order)

    def select_columns(self, indices: Iterable[int]) -> FieldMatrix:
        """Columns at the given 1-based indices, in that order."""
        idx = [j - 1 for j in indices]
        if any(not 0 <= j < self.cols for j in idx):
            raise IndexError(f"column index out of range 1..{self.cols}")
        return FieldMatrix._wrap(self._a[:, idx].reshape(self.rows, len(idx)), self.order)

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        _same_field(self, other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return FieldMatrix._wrap((self._a @ other._a) % self.q, self.order)

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        _same_field(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return FieldMatrix._wrap((self._a + other._a) % self.q, self.order)

    def scale_row(self, i: int, c: int) -> FieldMatrix:
        a = self._a.copy()
        a[i - 1] = (a[i - 1] * c) % self.q
        return FieldMatrix._wrap(a, self.order)

    def permute_rows(self, perm: Sequence[int]) -> FieldMatrix:
        return FieldMatrix._wrap(self._a[[p - 1 for p in perm]], self.order)

    def is_zero(self) -> bool:
        return not self._a.any()

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.order == other.order
            and self.shape == other.shape
            and np.array_equal(self._a, other._a)
        )

    def __hash__(self):
        return hash((self.q, self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"FieldMatrix(q={self.q}, {self.tolist()})"


def _same_field(*mats: FieldMatrix) -> None:
    orders = {m.order for m in mats}
    if len(orders) > 1:
        raise FieldError("matrices live over different fields: " + ", ".join(f"GF({o.q})" for o in orders))


@dataclass(frozen=True)
class DataVector:
    """Original data X = [x_1, ..., x_M] as a row vector over GF(q)."""

    coords: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if any(not 0 <= c < self.q for c in self.coords):
            raise FieldError(f"data coordinates must lie in [0, {self.q})")

    def __len__(self):
        return len(self.coords)

    def as_row(self) -> FieldMatrix:
        return FieldMatrix._wrap(np.array([self.coords], dtype=np.int64).reshape(1, len(self)), self.q)

    def elements(self) -> tuple[FieldElement, ...]:
        order = FieldOrder(self.q)
        return tuple(FieldElement(c, order) for c in self.coords)


def rref(m: FieldMatrix) -> tuple[FieldMatrix, list[int]]:
    """Reduced row echelon form and the 0-based pivot columns."""
    a = np.array(m.array, dtype=np.int64, order="C")
    pivots = _backend.rref(a, m.q)
    return FieldMatrix._wrap(a, m.order), list(pivots)


def mat_rank(m: FieldMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return int(_backend.rank(np.array(m.array, dtype=np.int64, order="C"), m.q))


def window_ranks(m: FieldMatrix, starts: Sequence[int], width: int) -> list[int]:
    """Ranks of the cyclic column windows of ``width`` at 1-based ``starts``."""
    if not 1 <= width <= m.cols:
        raise DimensionError(f"window width {width} outside 1..{m.cols}")
    if m.rows == 0:
        return [0] * len(starts)
    zero_based = np.array([(s - 1) % m.cols for s in starts], dtype=np.int64)
    return [int(r) for r in _backend.window_ranks(m.array, zero_based, width, m.q)]


def mat_solve(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix | None:
    """Return c with a @ c == b, or None when some column of b is outside a's span.

    Free variables are set to zero, so the solution uses only the
    lowest-index pivot columns of ``a``.
    """
    _same_field(a, b)
    if a.rows != b.rows:
        raise DimensionError(f"row counts differ: {a.rows} vs {b.rows}")
    aug = FieldMatrix._wrap(np.hstack([a.array, b.array]), a.order)
    red, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    c = np.zeros((a.cols, b.cols), dtype=np.int64)
    for r, p in enumerate(pivots):
        c[p] = red.array[r, a.cols:]
    return FieldMatrix._wrap(c, a.order)


def mat_inverse(a: FieldMatrix) -> FieldMatrix:
    if a.rows != a.cols:
        raise DimensionError(f"cannot invert a {a.rows}x{a.cols} matrix")
    c = mat_solve(a, FieldMatrix.identity(a.rows, a.order))
    if c is None:
        raise SpanError("matrix is singular")
    return c


def cyclic_window(m: FieldMatrix, start: int, width: int, axis: str = "columns") -> FieldMatrix:
    """``width`` consecutive columns (or rows) from 1-based ``start``, wrapping."""
    if axis == "rows":
        return cyclic_window(m.T, start, width, "columns").T
    if axis != "columns":
        raise ValueError(f"axis must be 'columns' or 'rows', got {axis!r}")
    if not 1 <= width <= m.cols:
        raise DimensionError(f"window width {width} outside 1..{m.cols}")
    if not 1 <= start <= m.cols:
        raise IndexError(f"start {start} outside 1..{m.cols}")
    return m.select_columns(((start - 1 + j) % m.cols) + 1 for j in range(width))


def complete_basis(base: FieldMatrix, pool: FieldMatrix, target_rank: int) -> list[int]:
    """Pick pool columns, lowest index first, lifting rank(base) to ``target_rank``.

    Returns 1-based indices into ``pool``.
    """
    _same_field(base, pool)
    if base.rows != pool.rows:
        raise DimensionError(f"dimension mismatch: {base.rows} vs {pool.rows}")
    _, pivots = rref(FieldMatrix.hstack([base, pool]))
    base_pivots = [p for p in pivots if p < base.cols]
    if len(base_pivots) != base.cols:
        raise SpanError("base columns are linearly dependent")
    need = target_rank - base.cols
    if need <= 0:
        return []
    picked = [p - base.cols + 1 for p in pivots if p >= base.cols]
    if len(picked) < need:
        raise SpanError(
            f"pool reaches rank {base.cols + len(picked)}, short of target {target_rank}"
        )
    return picked[:need]


def decompose_over(v: FieldMatrix, u_basis: FieldMatrix, w_basis: FieldMatrix) -> tuple[FieldMatrix, FieldMatrix]:
    """Split each column of ``v`` as u + w with u in span(u_basis), w in span(w_basis).

    Returns the coefficient matrices ``(cu, cw)`` so that
    ``u_basis @ cu + w_basis @ cw == v``.
    """
    _same_field(v, u_basis, w_basis)
    if not v.rows == u_basis.rows == w_basis.rows:
        raise DimensionError("v, u_basis and w_basis must share their dimension")
    c = mat_solve(FieldMatrix.hstack([u_basis, w_basis]), v)
    if c is None:
        raise SpanError("vector lies outside span(u_basis) + span(w_basis)")
    cu = FieldMatrix._wrap(c.array[: u_basis.cols], v.order)
    cw = FieldMatrix._wrap(c.array[u_basis.cols:], v.order)
    return cu, cw
