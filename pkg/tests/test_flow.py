import networkx as nx
import pytest

from ringstore.flow import FlowGraph, build_flow_graph, flow_mincut
from ringstore.planner import plan_reconstruction
from ringstore.scheme import build_ed_scheme


def nx_maxflow(g: FlowGraph, src, dst):
    h = nx.DiGraph()
    h.add_nodes_from(g.nodes)
    for (u, v), c in g.capacity.items():
        h.add_edge(u, v, capacity=c)
    return nx.maximum_flow_value(h, src, dst)


def test_graph_shape(ed_4_2_5):
    g = build_flow_graph(ed_4_2_5.params, plan_reconstruction(ed_4_2_5, 1))
    assert sorted(g.nodes) == ["N1", "N2", "N3", "N4", "S", "U1"]
    assert g.capacity[("S", "N3")] == 2
    assert g.capacity[("N3", "N2")] == 1
    assert g.capacity[("N2", "N1")] == 3
    assert g.capacity[("N1", "U1")] == 5
    assert g.capacity[("N4", "N3")] == 0
    assert ("N1", "N4") not in g.capacity


def test_mincut_equals_m(ed_4_2_5):
    g = build_flow_graph(ed_4_2_5.params, plan_reconstruction(ed_4_2_5, 1))
    assert flow_mincut(g, "S", "U1") == 5 == nx_maxflow(g, "S", "U1")


def test_reducing_any_chain_edge_breaks_the_cut(ed_4_2_5):
    g = build_flow_graph(ed_4_2_5.params, plan_reconstruction(ed_4_2_5, 1))
    edges = g.chain_edges()
    assert len(edges) == 3
    for edge in edges:
        h = g.with_capacity(edge, g.capacity[edge] - 1)
        assert flow_mincut(h, "S", "U1") == 4 == nx_maxflow(h, "S", "U1")


def test_single_node_plan():
    s = build_ed_scheme(2, 5, 3)
    g = build_flow_graph(s.params, plan_reconstruction(s, 2))
    assert flow_mincut(g, "S", "U2") == 3


def test_disconnected_is_zero():
    g = FlowGraph()
    g.add_edge("S", "A", 3)
    g.add_edge("B", "T", 3)
    assert flow_mincut(g, "S", "T") == 0
    assert flow_mincut(g, "S", "missing") == 0


def test_negative_capacity_rejected():
    with pytest.raises(ValueError):
        FlowGraph().add_edge("a", "b", -1)


@pytest.mark.parametrize("args", [(6, 3, 11), (8, 4, 30), (5, 1, 5)])
def test_mincut_against_networkx(args):
    s = build_ed_scheme(*args)
    for user in range(1, s.params.n + 1):
        g = build_flow_graph(s.params, plan_reconstruction(s, user))
        assert flow_mincut(g, "S", f"U{user}") == nx_maxflow(g, "S", f"U{user}") == s.params.m_size
