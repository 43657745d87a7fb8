"""Transmission plans for reconstruction and exact repair on the ring.

Every hop is a :class:`Transfer`: storage node ``src`` sends a list of
transmitted vectors (length-M coefficient columns) one step against the
node numbering, to node ``src - 1``, to its user, or to the substitute of a
failed node.  Each transfer also records how the sender computes its
payload locally::

    vectors == [incoming vectors | own node columns] @ mixing

so a simulator can replay the plan symbol by symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DimensionError, NotOrdssError, SpanError
from .galois import (
    FieldMatrix,
    complete_basis,
    decompose_over,
    mat_inverse,
    mat_rank,
    mat_solve,
    rref,
)
from .scheme import Scheme

__all__ = [
    "Transfer",
    "ReconstructionPlan",
    "RepairPlan",
    "plan_reconstruction",
    "plan_repair",
    "plan_greedy",
    "check_mixing",
]

DestKind = Literal["node", "user", "substitute"]


@dataclass(frozen=True)
class Transfer:
    src: int
    dst: int
    dst_kind: DestKind
    vectors: FieldMatrix
    mixing: FieldMatrix

    @property
    def size(self) -> int:
        return self.vectors.cols

    @property
    def src_label(self) -> str:
        return f"N{self.src}"

    @property
    def dst_label(self) -> str:
        return {"node": "N{}", "user": "U{}", "substitute": "N'{}"}[self.dst_kind].format(self.dst)

    def to_dict(self) -> dict:
        return {
            "from": self.src_label,
            "to": self.dst_label,
            "vectors": self.vectors.column_lists(),
        }


@dataclass(frozen=True)
class ReconstructionPlan:
    user_node: int
    edges: tuple[Transfer, ...]

    @property
    def total_bandwidth(self) -> int:
        return sum(e.size for e in self.edges)

    @property
    def delivered(self) -> FieldMatrix:
        """The vectors reaching the user, one per column."""
        return self.edges[-1].vectors

    def to_dict(self) -> dict:
        return {
            "kind": "reconstruct",
            "index": self.user_node,
            "edges": [e.to_dict() for e in self.edges],
            "total": self.total_bandwidth,
        }


@dataclass(frozen=True)
class RepairPlan:
    """Helper chain N_{i+k} -> ... -> N_{i+1} -> N'_i.

    ``basis_change`` maps the final payload back to the failed node's
    columns: ``edges[-1].vectors @ basis_change == G^(i)``.  It is the
    alpha x alpha inverse basis change when k >= 2, and an M x alpha
    decoding matrix in the single-helper case.
    """

    failed_node: int
    edges: tuple[Transfer, ...]
    basis_change: FieldMatrix

    @property
    def total_bandwidth(self) -> int:
        return sum(e.size for e in self.edges)

    @property
    def restored(self) -> FieldMatrix:
        return self.edges[-1].vectors @ self.basis_change

    def to_dict(self) -> dict:
        return {
            "kind": "repair",
            "index": self.failed_node,
            "edges": [e.to_dict() for e in self.edges],
            "total": self.total_bandwidth,
            "basis_change": self.basis_change.tolist(),
        }


def _selection(n_rows: int, picks: list[int], q: int) -> FieldMatrix:
    """0/1 matrix whose column j copies row ``picks[j]`` (0-based) of the input."""
    sel = np.zeros((n_rows, len(picks)), dtype=np.int64)
    for j, r in enumerate(picks):
        sel[r, j] = 1
    return FieldMatrix._wrap(sel, q)


def _forward_chain(s: Scheme, chain: list[int], own_picks: list[list[int]]) -> list[tuple[FieldMatrix, FieldMatrix]]:
    """Forward-and-append along ``chain`` (farthest node first).

    Each node re-sends everything it received followed by its own columns
    listed in ``own_picks`` (0-based).  Returns (vectors, mixing) per hop.
    """
    p = s.params
    hops = []
    incoming = FieldMatrix.zeros(p.m_size, 0, p.q)
    for node, picks in zip(chain, own_picks):
        c_in = incoming.cols
        mixing = _selection(c_in + p.alpha, list(range(c_in)) + [c_in + j for j in picks], p.q)
        out = FieldMatrix.hstack([incoming, s.node_matrix(node)]) @ mixing
        hops.append((out, mixing))
        incoming = out
    return hops


def _user_chain_edges(s: Scheme, chain, hops, user: int) -> tuple[Transfer, ...]:
    edges = [
        Transfer(node, s.params.node(node - 1), "node", vecs, mix)
        for node, (vecs, mix) in zip(chain[:-1], hops[:-1])
    ]
    vecs, mix = hops[-1]
    edges.append(Transfer(chain[-1], user, "user", vecs, mix))
    return tuple(edges)


def _require_ordss(s: Scheme) -> None:
    report = s.report
    if not report.is_ordss:
        raise NotOrdssError(report.describe())


def plan_reconstruction(s: Scheme, user: int) -> ReconstructionPlan:
    """Optimal plan for user U_i, meeting kM - k(k-1)alpha/2 exactly.

    The k-th node upstream sends the gamma of its columns that complete the
    nearer nodes' (k-1)*alpha columns to rank M; every nearer node forwards
    what it received plus all of its own columns.
    """
    p = s.params
    if not 1 <= user <= p.n:
        raise IndexError(f"user index {user} outside 1..{p.n}")
    _require_ordss(s)
    k = p.k
    chain = [p.node(user + j) for j in range(k - 1, -1, -1)]
    nearer = s.nodes_matrix(user, k - 1)
    far_picks = [j - 1 for j in complete_basis(nearer, s.node_matrix(chain[0]), p.m_size)]
    own = [far_picks] + [list(range(p.alpha))] * (k - 1)
    hops = _forward_chain(s, chain, own)
    return ReconstructionPlan(user, _user_chain_edges(s, chain, hops, user))


def plan_greedy(s: Scheme, user: int) -> ReconstructionPlan:
    """Reconstruction plan for any full-rank scheme.

    Walks upstream from the user's node, keeping only the columns that raise
    the running rank, until rank M is reached.  Optimal on an ORDSS.
    """
    p = s.params
    if not 1 <= user <= p.n:
        raise IndexError(f"user index {user} outside 1..{p.n}")
    if mat_rank(s.generator) < p.m_size:
        raise SpanError("generator matrix is rank deficient")
    nodes, picks = [], []
    basis = FieldMatrix.zeros(p.m_size, 0, p.q)
    for j in range(p.n):
        node = p.node(user + j)
        own = s.node_matrix(node)
        reach = mat_rank(FieldMatrix.hstack([basis, own]))
        chosen = complete_basis(basis, own, reach)
        nodes.append(node)
        picks.append([c - 1 for c in chosen])
        basis = FieldMatrix.hstack([basis, own.select_columns(chosen)])
        if reach == p.m_size:
            break
    chain, own_picks = nodes[::-1], picks[::-1]
    hops = _forward_chain(s, chain, own_picks)
    return ReconstructionPlan(user, _user_chain_edges(s, chain, hops, user))


def _split_basis_change(q_coords: FieldMatrix) -> tuple[FieldMatrix, int]:
    """Invertible A with q_coords @ A = [Q1 | 0], Q1 of full column rank r.

    Row-reduces q_coords^T while tracking the row operations.
    """
    alpha = q_coords.cols
    tracked = FieldMatrix.hstack([q_coords.T, FieldMatrix.identity(alpha, q_coords.order)])
    red, pivots = rref(tracked)
    r = sum(1 for c in pivots if c < q_coords.rows)
    ops = FieldMatrix._wrap(red.array[:, q_coords.rows:], q_coords.order)
    return ops.T, r


def plan_repair(s: Scheme, failed: int) -> RepairPlan:
    """Exact repair of node i with bandwidth M via helpers N_{i+1}..N_{i+k}.

    The nearer k-1 helpers span a subspace U of dimension (k-1)*alpha.  A
    basis change A splits the failed columns T into gamma columns that
    leave U and alpha - gamma columns inside U.  The farthest helper sends
    its component of the first group; each nearer helper adds its own
    component of every column of T @ A and forwards alpha partial sums.
    The substitute applies A^-1.
    """
    p = s.params
    if not 1 <= failed <= p.n:
        raise IndexError(f"node index {failed} outside 1..{p.n}")
    k = p.k
    if k > p.n - 1:
        raise DimensionError(f"repair needs k <= n-1 helpers, have k={k}, n={p.n}")
    _require_ordss(s)
    target = s.node_matrix(failed)

    if k == 1:
        helper = p.node(failed + 1)
        picks = [j - 1 for j in complete_basis(FieldMatrix.zeros(p.m_size, 0, p.q), s.node_matrix(helper), p.m_size)]
        (vecs, mix), = _forward_chain(s, [helper], [picks])
        decode = mat_solve(vecs, target)
        edge = Transfer(helper, failed, "substitute", vecs, mix)
        return RepairPlan(failed, (edge,), decode)

    near = [p.node(failed + j) for j in range(1, k)]
    far = p.node(failed + k)
    u_parts = [s.node_matrix(h) for h in near]
    u_basis = FieldMatrix.hstack(u_parts)
    w_basis = s.node_matrix(far)

    # quotient coordinates of T modulo U, read off the far node's completion columns
    _, w_coeffs = decompose_over(target, u_basis, w_basis)
    comp = complete_basis(u_basis, w_basis, p.m_size)
    q_coords = FieldMatrix._wrap(w_coeffs.array[[c - 1 for c in comp]], p.q)
    change, r = _split_basis_change(q_coords)
    if r != p.gamma:
        raise SpanError(f"failed node reaches only {r} quotient dimensions, expected {p.gamma}")
    moved = target @ change
    cu, cw = decompose_over(moved, u_basis, w_basis)
    if not FieldMatrix._wrap(cw.array[:, r:], p.q).is_zero():
        raise SpanError("basis change left far-node components in the U-part")

    edges = []
    # farthest helper: its own component of the first r moved columns
    far_mix = FieldMatrix._wrap(cw.array[:, :r], p.q)
    far_vecs = w_basis @ far_mix
    edges.append(Transfer(far, p.node(far - 1), "node", far_vecs, far_mix))
    incoming = far_vecs
    for pos in range(k - 2, -1, -1):
        helper = near[pos]
        own_coeff = FieldMatrix._wrap(cu.array[pos * p.alpha:(pos + 1) * p.alpha], p.q)
        carry = np.zeros((incoming.cols, p.alpha), dtype=np.int64)
        carry[:, :incoming.cols] = np.eye(incoming.cols, dtype=np.int64)
        mix = FieldMatrix._wrap(np.vstack([carry, own_coeff.array]), p.q)
        vecs = FieldMatrix.hstack([incoming, u_parts[pos]]) @ mix
        if pos == 0:
            edges.append(Transfer(helper, failed, "substitute", vecs, mix))
        else:
            edges.append(Transfer(helper, p.node(helper - 1), "node", vecs, mix))
        incoming = vecs
    plan = RepairPlan(failed, tuple(edges), mat_inverse(change))
    if plan.restored != target:
        raise SpanError("repair plan does not restore the failed node exactly")
    return plan


def check_mixing(s: Scheme, plan: ReconstructionPlan | RepairPlan) -> bool:
    """True when every hop's vectors follow from its inputs and its own columns."""
    incoming = FieldMatrix.zeros(s.params.m_size, 0, s.params.q)
    for e in plan.edges:
        stacked = FieldMatrix.hstack([incoming, s.node_matrix(e.src)])
        if e.mixing.rows != stacked.cols or stacked @ e.mixing != e.vectors:
            return False
        incoming = e.vectors
    return True

