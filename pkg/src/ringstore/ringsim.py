"""Deterministic hop-by-hop simulator for plans on the unidirectional ring.

Time is logical: every hop is one tick.  Nodes only ever compute their
outgoing symbols from the symbols they received and the symbols they
store, following each transfer's mixing matrix, so a plan that relied on
data a node cannot see would fail verification here.

Payload digests are the first 16 hex digits of SHA-256 over the payload
symbols, each packed as a 4-byte big-endian unsigned integer, in order.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import SimulationError
from .galois import DataVector, FieldMatrix, mat_solve
from .planner import ReconstructionPlan, RepairPlan, Transfer, plan_reconstruction, plan_repair
from .scheme import Scheme, node_symbols

__all__ = [
    "Event",
    "TraceRecord",
    "Trace",
    "RingState",
    "RingSimulator",
    "simulate",
    "random_data",
    "payload_digest",
    "load_events",
]

EVENT_KINDS = ("user_request", "node_failure", "repair")


@dataclass(frozen=True)
class Event:
    kind: str
    node: int

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}; expected one of {EVENT_KINDS}")
        if isinstance(self.node, bool) or not isinstance(self.node, int):
            raise ValueError(f"event node must be an integer, got {self.node!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> Event:
        return cls(doc.get("type", doc.get("kind")), doc["node"])

    def to_dict(self) -> dict:
        return {"type": self.kind, "node": self.node}


def load_events(text: str) -> list[Event]:
    """Parse a JSON list of ``{"type": ..., "node": ...}`` objects."""
    doc = json.loads(text)
    if not isinstance(doc, list):
        raise ValueError("events file must hold a JSON list")
    return [Event.from_dict(d) for d in doc]


def payload_digest(symbols) -> str:
    raw = b"".join(struct.pack(">I", int(v)) for v in symbols)
    return hashlib.sha256(raw).hexdigest()[:16]


def random_data(m_size: int, q: int, seed: int) -> DataVector:
    """Data vector drawn from numpy's PCG64 stream seeded with ``seed``."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return DataVector(tuple(int(v) for v in rng.integers(0, q, size=m_size)), q)


@dataclass(frozen=True)
class TraceRecord:
    tick: int
    src: str
    dst: str
    count: int
    digest: str

    def line(self) -> str:
        return f"tick {self.tick}: {self.src} -> {self.dst}: {self.count} symbols"


@dataclass
class Trace:
    records: list[TraceRecord] = field(default_factory=list)
    per_link: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(r.count for r in self.records)

    def add(self, record: TraceRecord) -> None:
        self.records.append(record)
        link = f"{record.src}->{record.dst}"
        self.per_link[link] = self.per_link.get(link, 0) + record.count

    def to_text(self) -> str:
        return "".join(r.line() + "\n" for r in self.records)

    def summary(self) -> dict:
        return {"per_link": dict(self.per_link), "total": self.total}

    def summary_json(self) -> str:
        return json.dumps(self.summary())


@dataclass
class RingState:
    scheme: Scheme
    data: DataVector
    node_stores: list[tuple[int, ...] | None]
    node_status: list[str]

    @classmethod
    def initial(cls, scheme: Scheme, data: DataVector) -> RingState:
        n = scheme.params.n
        stores = [tuple(int(v) for v in node_symbols(scheme, data, i)) for i in range(1, n + 1)]
        return cls(scheme, data, stores, ["alive"] * n)

    def store(self, i: int) -> tuple[int, ...] | None:
        return self.node_stores[i - 1]

    def status(self, i: int) -> str:
        return self.node_status[i - 1]

    def failed_nodes(self) -> list[int]:
        return [i + 1 for i, st in enumerate(self.node_status) if st == "failed"]


class RingSimulator:
    def __init__(self, scheme: Scheme, data: DataVector):
        self.scheme = scheme
        self.state = RingState.initial(scheme, data)
        self.original = list(self.state.node_stores)
        self.trace = Trace()
        self.tick = 0
        self._x = data.as_row()

    @property
    def q(self) -> int:
        return self.scheme.params.q

    def run(self, events) -> Trace:
        for ev in events:
            {
                "user_request": self.user_request,
                "node_failure": self.node_failure,
                "repair": self.repair,
            }[ev.kind](ev.node)
        return self.trace

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.scheme.params.n:
            raise SimulationError(f"node index {i} outside 1..{self.scheme.params.n}")

    def _check_direction(self, t: Transfer) -> None:
        n = self.scheme.params.n
        downstream = (t.src - 2) % n + 1
        ok = t.dst == t.src if t.dst_kind == "user" else t.dst == downstream
        if not ok:
            raise SimulationError(f"{t.src_label} -> {t.dst_label} runs against the ring direction")

    def execute(self, plan: ReconstructionPlan | RepairPlan) -> np.ndarray:
        incoming = np.zeros(0, dtype=np.int64)
        for t in plan.edges:
            self._check_direction(t)
            own = self.state.store(t.src)
            if own is None:
                raise SimulationError(f"{t.src_label} is failed and cannot transmit")
            stacked = np.concatenate([incoming, np.array(own, dtype=np.int64)])
            out = (stacked @ t.mixing.array) % self.q
            expected = (self._x @ t.vectors).array[0]
            if not np.array_equal(out, expected):
                raise SimulationError(f"payload on {t.src_label} -> {t.dst_label} disagrees with its vectors")
            self.tick += 1
            self.trace.add(TraceRecord(self.tick, t.src_label, t.dst_label, t.size, payload_digest(out)))
            incoming = out
        return incoming

    def user_request(self, i: int, plan: ReconstructionPlan | None = None) -> DataVector:
        self._check_index(i)
        if self.state.status(i) == "failed":
            raise SimulationError(f"user request at failed node N{i} before repair")
        plan = plan or plan_reconstruction(self.scheme, i)
        if plan.user_node != i:
            raise SimulationError(f"plan serves U{plan.user_node}, not U{i}")
        for t in plan.edges:
            if self.state.status(t.src) == "failed":
                raise SimulationError(f"reconstruction for U{i} needs failed node N{t.src}")
        received = self.execute(plan)
        y = FieldMatrix._wrap(received.reshape(-1, 1), self.q)
        solved = mat_solve(plan.delivered.T, y)
        if solved is None:
            raise SimulationError(f"U{i} cannot decode the delivered symbols")
        decoded = DataVector(tuple(solved.array[:, 0].tolist()), self.q)
        if decoded != self.state.data:
            raise SimulationError(f"U{i} decoded {decoded.coords}, expected {self.state.data.coords}")
        return decoded

    def node_failure(self, i: int) -> None:
        self._check_index(i)
        outstanding = self.state.failed_nodes()
        if outstanding:
            raise SimulationError(
                f"N{i} cannot fail while N{outstanding[0]} awaits repair (one failure at a time)"
            )
        self.state.node_stores[i - 1] = None
        self.state.node_status[i - 1] = "failed"

    def repair(self, i: int, plan: RepairPlan | None = None) -> None:
        self._check_index(i)
        if self.state.status(i) != "failed":
            raise SimulationError(f"repair requested for N{i}, which has not failed")
        plan = plan or plan_repair(self.scheme, i)
        if plan.failed_node != i:
            raise SimulationError(f"plan repairs N{plan.failed_node}, not N{i}")
        received = self.execute(plan)
        restored = tuple(int(v) for v in (received @ plan.basis_change.array) % self.q)
        if restored != self.original[i - 1]:
            raise SimulationError(f"N'{i} restored {restored}, expected {self.original[i - 1]}")
        self.state.node_stores[i - 1] = restored
        self.state.node_status[i - 1] = "substitute"


def simulate(s: Scheme, x: DataVector, events) -> Trace:
    """Run ``events`` in order and return the traffic trace."""
    return RingSimulator(s, x).run(events)
