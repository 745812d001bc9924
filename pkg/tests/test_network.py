import networkx as nx
import pytest
from hypothesis import given, settings

from helpers import demand_graphs, triangle, weighted_path
from treeweave import (
    CongestionInstance,
    DemandGraph,
    EdpInstance,
    InputError,
    brute_opt_spanning_congestion,
    cut_weight,
    gomory_hu,
    min_cut_st,
    optimal_complete_tree,
    reduce_edp,
    verify_congestion_tree,
)
from treeweave.network import spanning_tree_loads


def nx_min_cut(g, s, t):
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    for u, v, w in g.edges:
        h.add_edge(u, v, capacity=w)
    return nx.minimum_cut_value(h, s, t)


def test_min_cut_examples():
    value, cut = min_cut_st(DemandGraph(2, [(0, 1, 5)]), 0, 1)
    assert (value, cut.side) == (5, (0,))
    value, cut = min_cut_st(weighted_path(), 0, 2)
    assert (value, cut.side) == (2, (0, 1))
    g = DemandGraph(4, [(0, 1, 3), (2, 3, 1)])
    value, cut = min_cut_st(g, 0, 3)
    assert (value, cut.side) == (0, (0, 1))
    with pytest.raises(InputError):
        min_cut_st(g, 1, 1)


def test_gomory_hu_examples():
    assert gomory_hu(DemandGraph(2, [(0, 1, 5)])).edges == ((0, 1, 5),)
    assert gomory_hu(weighted_path()).edges == ((0, 1, 3), (1, 2, 2))
    tree = gomory_hu(triangle())
    assert len(tree.edges) == 2 and all(f == 2 for _, _, f in tree.edges)


@pytest.mark.parametrize("graph, expected", [
    (DemandGraph(2, [(0, 1, 5)]), 5),
    (triangle(), 2),
    (weighted_path(), 3),
])
def test_optimal_complete_tree_examples(graph, expected):
    assert optimal_complete_tree(graph)[1] == expected
    assert brute_opt_spanning_congestion(graph)[1] == expected


@settings(max_examples=80, deadline=None)
@given(demand_graphs(min_n=2, max_n=8))
def test_min_cut_matches_networkx_and_cut_weight(g):
    for s in range(g.n):
        for t in range(s + 1, g.n):
            value, cut = min_cut_st(g, s, t)
            assert s in cut and t not in cut
            assert cut_weight(g, cut) == value == nx_min_cut(g, s, t)


@settings(max_examples=80, deadline=None)
@given(demand_graphs(min_n=2, max_n=8))
def test_gomory_hu_pairwise_property(g):
    tree = gomory_hu(g)
    assert len(tree.edges) == g.n - 1
    for s in range(g.n):
        for t in range(s + 1, g.n):
            assert tree.path_min(s, t) == min_cut_st(g, s, t)[0]


@settings(max_examples=40, deadline=None)
@given(demand_graphs(min_n=2, max_n=6))
def test_complete_tree_is_optimal(g):
    tree, value = optimal_complete_tree(g)
    assert value == brute_opt_spanning_congestion(g)[1]


@settings(max_examples=30, deadline=None)
@given(demand_graphs(min_n=2, max_n=5))
def test_every_tree_edge_load_is_at_least_the_separated_min_cut(g):
    from treeweave import enum_spanning_trees
    from treeweave.network import _tree_side

    for edges in enum_spanning_trees(g.n):
        loads = spanning_tree_loads(g, edges)
        for (a, b), load in zip(edges, loads):
            side = set(_tree_side(g.n, edges, a, b))
            s = min(side)
            t = min(set(range(g.n)) - side)
            assert load >= min_cut_st(g, s, t)[0]


def path_instance():
    # s=0, m=1, t=2
    return EdpInstance(3, ((0, 1), (1, 2)), ((0, 2),))


def k4_instance():
    edges = tuple((u, v) for u in range(4) for v in range(u + 1, 4))
    return EdpInstance(4, edges, ((0, 2), (1, 3)))


def test_reduce_path_instance():
    out = reduce_edp(path_instance())
    assert out.feasibility.n == 4
    # ports: s -> 0; m -> 1, 2 (clique edge); t -> 3
    assert out.ports == ((0,), (1, 2), (3,))
    assert out.feasibility.edges == ((0, 1, 1), (1, 2, 1), (2, 3, 1))
    assert out.demand.edges == ((0, 3, 1),)
    assert out.bound == 1


def test_reduce_single_edge():
    out = reduce_edp(EdpInstance(2, ((0, 1),), ((0, 1),)))
    assert out.feasibility.edges == ((0, 1, 1),) and out.demand.edges == ((0, 1, 1),)


def test_reduce_k4():
    out = reduce_edp(k4_instance())
    assert out.feasibility.n == 12
    clique_edges = [e for e in out.feasibility.edges
                    if any(e[0] in p and e[1] in p for p in out.ports)]
    assert len(clique_edges) == 12  # four triangles
    assert len(out.feasibility.edges) - len(clique_edges) == 6
    assert len(out.demand.edges) == 2


def test_reduce_port_reuse_at_most_one():
    out = reduce_edp(k4_instance())
    port_edges = {p for _, ports in out.edge_ports for p in ports}
    assert len(port_edges) == 2 * len(out.edge_ports)
    demand_ports = [p for _, ports in out.demand_ports for p in ports]
    assert len(set(demand_ports)) == len(demand_ports)
    assert out.feasibility.n == sum(len(p) for p in out.ports)


def test_reduce_rejects_bad_terminals():
    with pytest.raises(InputError):
        reduce_edp(EdpInstance(3, ((0, 1),), ((0, 2),)))
    with pytest.raises(InputError):
        reduce_edp(EdpInstance(2, ((0, 1),), ((0, 1), (0, 1))))


def test_verify_congestion_tree():
    out = reduce_edp(path_instance())
    assert verify_congestion_tree(out, [(0, 1), (1, 2), (2, 3)])
    assert not verify_congestion_tree(out, [(0, 1), (2, 3)])
    with pytest.raises(InputError):
        verify_congestion_tree(out, [(0, 3)])
    with pytest.raises(InputError):
        verify_congestion_tree(out, [(0, 1, 2)])


def test_verify_rejects_shared_bridge():
    # a-x, b-x, x-y, y-c, y-d with pairs (a, c) and (b, d): both cross x-y
    a, b, x, y, c, d = range(6)
    inst = EdpInstance(6, ((a, x), (b, x), (x, y), (y, c), (y, d)), ((a, c), (b, d)))
    out = reduce_edp(inst)
    f = out.feasibility
    # any spanning tree must use the single x-y port edge; take a BFS tree
    adj = {v: sorted(f.neighbors(v)) for v in f.vertices()}
    seen, tree, queue = {0}, [], [0]
    for v in queue:
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.append((v, w))
                queue.append(w)
    assert len(tree) == f.n - 1
    assert not verify_congestion_tree(out, tree)
    relaxed = CongestionInstance(out.feasibility, out.demand, 2)
    assert verify_congestion_tree(relaxed, tree)
