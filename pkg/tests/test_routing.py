import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import cycle4, demand_graphs, star3, triangle
from treeweave import (
    DemandGraph,
    InputError,
    InvariantError,
    RoutingTree,
    SeparatorStrategy,
    brute_opt_congestion,
    congestion,
    congestion_report,
    edge_load,
    lower_bounds,
    random_demand_graph,
    route_tree,
    shortcut_degree_two,
)
from treeweave.routing import cut_loads, path_lengths, path_loads


def pairing(a, b, c, d):
    """Quartet tree joining leaves a,b on one side and c,d on the other."""
    roles = [None] * 6
    for node, v in enumerate((a, b, c, d)):
        roles[node] = v
    return RoutingTree(tuple(roles), ((0, 4), (1, 4), (2, 5), (3, 5), (4, 5)))


def test_triangle_has_single_topology():
    t = route_tree(triangle())
    t.check(3)
    assert t.num_nodes == 4
    assert congestion(t, triangle()) == 2


def test_cycle_avoids_the_crossing_pairing():
    g = cycle4()
    t = route_tree(g, SeparatorStrategy.exact())
    t.check(4)
    assert congestion(t, g) == 2
    assert frozenset({0, 2}) not in t.splits() and frozenset({1, 3}) not in t.splits()


def test_star_congestion_is_center_load():
    g = star3()
    t = route_tree(g, SeparatorStrategy.exact())
    assert congestion(t, g) == 3


@pytest.mark.parametrize("n", [1, 2])
def test_tiny_graphs(n):
    g = DemandGraph(n, [(0, 1, 4)] if n == 2 else [])
    t = route_tree(g)
    t.check(n)
    assert len(t.edges) == n - 1
    assert congestion(t, g) == (4 if n == 2 else 0)


def test_empty_graph_rejected():
    with pytest.raises(InputError):
        route_tree(DemandGraph(0))


def test_route_tree_rejects_large_b():
    with pytest.raises(InputError):
        route_tree(cycle4(), b="1/2")


def test_shortcut_examples():
    path = RoutingTree((0, None, 1), ((0, 1), (1, 2)))
    assert shortcut_degree_two(path) == RoutingTree((0, 1), ((0, 1),))
    t = route_tree(cycle4())
    assert shortcut_degree_two(t) == t
    # two cherries joined by a chain of three degree-2 internal nodes
    chain = RoutingTree(
        (0, 1, 2, 3, None, None, None, None, None),
        ((0, 4), (1, 4), (2, 5), (3, 5), (4, 6), (6, 7), (7, 8), (8, 5)),
    )
    assert shortcut_degree_two(chain).splits() == pairing(0, 1, 2, 3).splits()
    assert len(shortcut_degree_two(chain).edges) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.randoms(use_true_random=False))
def test_shortcut_is_order_independent(n, rnd):
    # random binary tree, then sprinkle degree-2 nodes onto random edges
    roles = list(range(n)) + [None]
    edges = [(n, 0), (n, 1), (n, 2)]
    for leaf in range(3, n):
        a, b = edges.pop(rnd.randrange(len(edges)))
        c = len(roles)
        roles.append(None)
        edges += [(a, c), (c, b), (c, leaf)]
    for _ in range(rnd.randrange(5)):
        a, b = edges.pop(rnd.randrange(len(edges)))
        c = len(roles)
        roles.append(None)
        edges += [(a, c), (c, b)]
    t = RoutingTree(tuple(roles), tuple(edges))
    order = list(range(len(roles)))
    rnd.shuffle(order)
    a, b = shortcut_degree_two(t), shortcut_degree_two(t, order)
    assert a == b
    a.check(n)


def test_edge_load_examples():
    g = triangle()
    t = route_tree(g)
    leaf0 = t.leaves()[0]
    edge = next(e for e in t.edges if leaf0 in e)
    assert edge_load(t, g, edge) == 2
    assert edge_load(pairing(0, 1, 2, 3), cycle4(), (4, 5)) == 2
    assert edge_load(pairing(0, 2, 1, 3), cycle4(), (4, 5)) == 4
    with pytest.raises(InputError):
        edge_load(t, g, (0, 1))


def test_congestion_report_examples():
    rep = congestion_report(route_tree(star3()), star3())
    assert (rep.congestion, rep.lb_vertex, rep.ratio_upper_cert) == (3, 3, 1)
    rep = congestion_report(pairing(0, 1, 2, 3), cycle4())
    assert (rep.congestion, rep.lb_vertex, rep.lb_separator) == (2, 2, 2)
    rep = congestion_report(RoutingTree((0,), ()), DemandGraph(1))
    assert (rep.congestion, rep.lb_vertex, rep.lb_separator) == (0, 0, None)


def test_congestion_report_checks_bijection():
    with pytest.raises(InputError):
        congestion_report(pairing(0, 1, 2, 3), DemandGraph(5))


def test_lower_bounds_examples():
    # for the star, a 1/3-balanced side under unit weights has exactly two
    # vertices, so the cheapest split cuts two spokes
    assert lower_bounds(star3()) == (3, 2)
    assert lower_bounds(triangle()) == (2, 2)
    assert lower_bounds(cycle4()) == (2, 2)
    assert lower_bounds(DemandGraph(1)) == (0, None)


def test_invariant_error_on_corrupt_tree():
    bad = RoutingTree((0, 1, 2, None, None), ((0, 3), (1, 3), (3, 4), (2, 4)))
    with pytest.raises(InvariantError):
        bad.check(3)


def test_naive_recursion_is_a_routing_tree():
    g = random_demand_graph(9, 0.5, rng=random.Random(3))
    t = route_tree(g, naive=True)
    t.check(9)


def test_heuristic_route_tree_scales():
    g = random_demand_graph(60, 0.1, rng=random.Random(8))
    t = route_tree(g, SeparatorStrategy.heuristic(seed=1, restarts=3))
    t.check(60)
    rep = congestion_report(t, g, with_separator_lb=False)
    assert rep.lb_separator is None and rep.congestion >= rep.lb_vertex


@settings(max_examples=80, deadline=None)
@given(demand_graphs(max_n=12), st.sampled_from(["exact", "heuristic"]))
def test_route_tree_structure(g, kind):
    t = route_tree(g, SeparatorStrategy(kind=kind, seed=3, restarts=2))
    t.check(g.n)


@settings(max_examples=80, deadline=None)
@given(demand_graphs(max_n=9))
def test_load_methods_and_total_load(g):
    t = route_tree(g)
    assert cut_loads(t, g) == path_loads(t, g)
    lengths = path_lengths(t)
    assert sum(cut_loads(t, g).values()) == sum(w * lengths[(u, v)] for u, v, w in g.edges)


@settings(max_examples=60, deadline=None)
@given(demand_graphs(max_n=8))
def test_four_times_optimal_bound_and_lower_bounds(g):
    _, opt = brute_opt_congestion(g)
    assert congestion(route_tree(g), g) <= 4 * opt
    lb_vertex, lb_sep = lower_bounds(g)
    assert lb_vertex <= opt
    assert lb_sep is None or lb_sep <= opt


@settings(max_examples=30, deadline=None)
@given(demand_graphs(max_n=9), st.integers(0, 1000))
def test_route_tree_is_deterministic(g, seed):
    s = SeparatorStrategy.heuristic(seed, 4)
    assert route_tree(g, s) == route_tree(g, s)
