"""Storage schemes on a unidirectional ring: parameters, constructions, validation.

A scheme is an M x (n*alpha) generator matrix G over GF(q); node N_i stores
the alpha symbols X @ G[:, (i-1)*alpha : i*alpha].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .edmatrix import ed_matrix
from .errors import DimensionError, InfeasibleParameters, RingStoreError
from .galois import (
    DataVector,
    FieldElement,
    FieldMatrix,
    FieldOrder,
    mat_rank,
    next_prime,
    window_ranks,
)

__all__ = [
    "RingParams",
    "Scheme",
    "OrdssReport",
    "SchemeFormatError",
    "reconstruct_bound",
    "repair_bound",
    "build_ed_scheme",
    "build_mds_scheme",
    "validate_ordss",
    "node_symbols",
]


class SchemeFormatError(RingStoreError, ValueError):
    """A scheme document is malformed."""


@dataclass(frozen=True)
class RingParams:
    n: int
    alpha: int
    m_size: int
    q: int = 2

    def __post_init__(self):
        for name in ("n", "alpha", "m_size"):
            if getattr(self, name) < 1:
                raise InfeasibleParameters(f"infeasible: {name} must be >= 1")
        FieldOrder(self.q)
        if self.n * self.alpha < self.m_size:
            raise InfeasibleParameters("infeasible: n*alpha < M")
        if self.k > self.n:
            raise InfeasibleParameters("infeasible: k = ceil(M/alpha) > n")

    @property
    def k(self) -> int:
        """Number of adjacent nodes a user draws on, ceil(M / alpha)."""
        return -(-self.m_size // self.alpha)

    @property
    def gamma(self) -> int:
        """Share of the farthest contributing node, M - (k-1)*alpha."""
        return self.m_size - (self.k - 1) * self.alpha

    def node(self, i: int) -> int:
        """Wrap any integer onto the ring labels 1..n."""
        return (i - 1) % self.n + 1


def reconstruct_bound(params: RingParams) -> int:
    k, m, a = params.k, params.m_size, params.alpha
    return k * m - k * (k - 1) * a // 2


def repair_bound(params: RingParams) -> int:
    return params.m_size


@dataclass(frozen=True)
class OrdssReport:
    condition_i_ok: bool
    condition_ii_ok: bool
    failing_window: int | None = None

    @property
    def is_ordss(self) -> bool:
        return self.condition_i_ok and self.condition_ii_ok

    def __bool__(self):
        return self.is_ordss

    def describe(self) -> str:
        if self.is_ordss:
            return "ORDSS: yes"
        failed = []
        if not self.condition_i_ok:
            failed.append("(i)")
        if not self.condition_ii_ok:
            failed.append("(ii)")
        return (
            f"ORDSS: no (condition {' and '.join(failed)} fails; "
            f"first failing window starts at N{self.failing_window})"
        )


@dataclass(frozen=True)
class Scheme:
    params: RingParams
    generator: FieldMatrix

    def __post_init__(self):
        p, g = self.params, self.generator
        if g.q != p.q:
            raise DimensionError(f"generator is over GF({g.q}), params say GF({p.q})")
        if g.shape != (p.m_size, p.n * p.alpha):
            raise DimensionError(
                f"generator must be {p.m_size}x{p.n * p.alpha}, got {g.rows}x{g.cols}"
            )
        if mat_rank(g) != p.m_size:
            raise DimensionError("generator matrix must have full row rank M")

    @classmethod
    def from_nodes(cls, node_columns, q: int = 2) -> Scheme:
        """Build a scheme from per-node lists of column vectors."""
        alpha = len(node_columns[0])
        if any(len(cols) != alpha for cols in node_columns):
            raise DimensionError("every node must hold the same number of vectors")
        flat = [c for cols in node_columns for c in cols]
        gen = FieldMatrix.from_columns(flat, q)
        return cls(RingParams(len(node_columns), alpha, gen.rows, q), gen)

    def node_matrix(self, i: int) -> FieldMatrix:
        """G^(i): the alpha columns owned by node i (1-based, wraps)."""
        a = self.params.alpha
        i = self.params.node(i)
        return FieldMatrix._wrap(self.generator.array[:, (i - 1) * a: i * a], self.generator.order)

    @property
    def node_matrices(self) -> tuple[FieldMatrix, ...]:
        return tuple(self.node_matrix(i) for i in range(1, self.params.n + 1))

    def nodes_matrix(self, first: int, count: int) -> FieldMatrix:
        """Columns of ``count`` consecutive nodes starting at ``first``, in ring order."""
        return FieldMatrix.hstack(
            [self.node_matrix(first + j) for j in range(count)],
            rows=self.params.m_size,
            q=self.params.q,
        )

    @cached_property
    def report(self) -> OrdssReport:
        return validate_ordss(self)

    def to_dict(self) -> dict:
        p = self.params
        return {
            "q": p.q,
            "n": p.n,
            "alpha": p.alpha,
            "m_size": p.m_size,
            "generator": self.generator.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    @classmethod
    def from_dict(cls, doc) -> Scheme:
        try:
            params = RingParams(int(doc["n"]), int(doc["alpha"]), int(doc["m_size"]), int(doc["q"]))
            gen = doc["generator"]
            if not isinstance(gen, list) or not all(isinstance(r, list) for r in gen):
                raise SchemeFormatError("generator must be a list of rows")
            if len({len(r) for r in gen}) > 1:
                raise SchemeFormatError("generator rows have unequal lengths")
            if any(isinstance(v, bool) or not isinstance(v, int) for r in gen for v in r):
                raise SchemeFormatError("generator entries must be integers")
            return cls(params, FieldMatrix(gen, params.q))
        except (KeyError, TypeError) as exc:
            raise SchemeFormatError(f"malformed scheme document: {exc!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> Scheme:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemeFormatError(f"malformed scheme document: {exc}") from exc
        if not isinstance(doc, dict):
            raise SchemeFormatError("scheme document must be a JSON object")
        return cls.from_dict(doc)


def build_ed_scheme(n: int, alpha: int, m_size: int) -> Scheme:
    """ED construction over GF(2): generator = ed_matrix(M, n*alpha)."""
    params = RingParams(n, alpha, m_size, 2)
    return Scheme(params, ed_matrix(m_size, n * alpha).matrix)


def vandermonde(m_size: int, length: int, q: int) -> FieldMatrix:
    """Rows are the 0th..(M-1)th powers of the points 0, 1, ..., length-1 mod q."""
    pts = np.arange(length, dtype=np.int64) % q
    rows = np.ones((m_size, length), dtype=np.int64)
    for r in range(1, m_size):
        rows[r] = (rows[r - 1] * pts) % q
    return FieldMatrix._wrap(rows, q)


def build_mds_scheme(n: int, alpha: int, m_size: int) -> Scheme:
    """MDS construction: Vandermonde code over GF(p), p the smallest prime >= n*alpha."""
    RingParams(n, alpha, m_size, 2)
    q = next_prime(n * alpha)
    params = RingParams(n, alpha, m_size, q)
    return Scheme(params, vandermonde(m_size, n * alpha, q))


def validate_ordss(s: Scheme) -> OrdssReport:
    """Check both adjacent-node conditions over every cyclic starting node.

    (i) the (k-1)*alpha vectors of any k-1 adjacent nodes are independent;
    (ii) any k adjacent nodes hold M independent vectors.
    """
    p = s.params
    a, k = p.alpha, p.k
    starts = [(i - 1) * a + 1 for i in range(1, p.n + 1)]
    fail_i = fail_ii = None
    if k >= 2:
        width = (k - 1) * a
        for node, r in enumerate(window_ranks(s.generator, starts, width), start=1):
            if r < width:
                fail_i = node
                break
    for node, r in enumerate(window_ranks(s.generator, starts, k * a), start=1):
        if r < p.m_size:
            fail_ii = node
            break
    failing = min((f for f in (fail_i, fail_ii) if f is not None), default=None)
    return OrdssReport(fail_i is None, fail_ii is None, failing)


def node_symbols(s: Scheme, x: DataVector, i: int) -> tuple[FieldElement, ...]:
    """The alpha symbols X @ G^(i) stored at node i."""
    if len(x) != s.params.m_size:
        raise DimensionError(f"data vector has length {len(x)}, scheme needs {s.params.m_size}")
    if x.q != s.params.q:
        raise DimensionError(f"data vector is over GF({x.q}), scheme over GF({s.params.q})")
    if not 1 <= i <= s.params.n:
        raise IndexError(f"node index {i} outside 1..{s.params.n}")
    row = x.as_row() @ s.node_matrix(i)
    order = row.order
    return tuple(FieldElement(int(v), order) for v in row.array[0])
