"""Information flow graphs and a max-flow / min-cut oracle.

The graph for user U_i is the ring with the edge N_i -> N_{i-1} dropped
(the acyclic graph seen by that user): a source S feeding every storage
node with capacity alpha, ring edges N_j -> N_{j-1} carrying the plan's
payload sizes (zero where the plan sends nothing), and N_i -> U_i.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .planner import ReconstructionPlan
from .scheme import RingParams

__all__ = ["FlowGraph", "build_flow_graph", "flow_mincut"]


@dataclass
class FlowGraph:
    nodes: list[str] = field(default_factory=list)
    capacity: dict[tuple[str, str], int] = field(default_factory=dict)

    def add_edge(self, u: str, v: str, cap: int) -> None:
        if cap < 0:
            raise ValueError(f"negative capacity on {u}->{v}")
        for x in (u, v):
            if x not in self.nodes:
                self.nodes.append(x)
        self.capacity[(u, v)] = cap

    def with_capacity(self, edge: tuple[str, str], cap: int) -> FlowGraph:
        g = FlowGraph(list(self.nodes), dict(self.capacity))
        if edge not in g.capacity:
            raise KeyError(edge)
        g.add_edge(*edge, cap)
        return g

    def chain_edges(self) -> list[tuple[str, str]]:
        """Edges that carry transmitted symbols (everything not leaving S)."""
        return [e for e, c in self.capacity.items() if e[0] != "S" and c > 0]


def build_flow_graph(params: RingParams, plan: ReconstructionPlan) -> FlowGraph:
    g = FlowGraph()
    user = plan.user_node
    g.add_edge("S", f"N{user}", params.alpha)
    for j in range(1, params.n):
        g.add_edge("S", f"N{params.node(user + j)}", params.alpha)
    sizes = {(e.src_label, e.dst_label): e.size for e in plan.edges}
    for j in range(params.n - 1, 0, -1):
        u, v = f"N{params.node(user + j)}", f"N{params.node(user + j - 1)}"
        g.add_edge(u, v, sizes.pop((u, v), 0))
    last = (f"N{user}", f"U{user}")
    g.add_edge(*last, sizes.pop(last, 0))
    if sizes:
        raise ValueError(f"plan uses edges outside the ring graph: {sorted(sizes)}")
    return g


def flow_mincut(g: FlowGraph, src: str, dst: str) -> int:
    """Max-flow value from ``src`` to ``dst`` by shortest augmenting paths."""
    if src not in g.nodes or dst not in g.nodes:
        return 0
    residual: dict[str, dict[str, int]] = {v: {} for v in g.nodes}
    for (u, v), c in g.capacity.items():
        residual[u][v] = residual[u].get(v, 0) + c
        residual[v].setdefault(u, 0)
    total = 0
    while True:
        parent = {src: None}
        queue = deque([src])
        while queue and dst not in parent:
            u = queue.popleft()
            for v, c in residual[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if dst not in parent:
            return total
        path, v = [], dst
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        push = min(residual[u][v] for u, v in path)
        for u, v in path:
            residual[u][v] -= push
            residual[v][u] += push
        total += push
