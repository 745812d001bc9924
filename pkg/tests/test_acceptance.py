"""Acceptance suite: one test per criterion, each at its stated tolerance."""

import json
import random
import time
from fractions import Fraction

import pytest

from treeweave import (
    DemandGraph,
    EdpInstance,
    NoBalancedCut,
    SeparatorStrategy,
    VertexWeights,
    brute_opt_congestion,
    brute_opt_spanning_congestion,
    enum_balanced_cuts,
    enum_routing_trees,
    enum_spanning_trees,
    exact_min_balanced_cut,
    gomory_hu,
    heuristic_balanced_cut,
    induced_subgraph,
    is_balanced,
    lower_bounds,
    min_cut_st,
    optimal_complete_tree,
    random_demand_graph,
    reduce_edp,
    route_tree,
    verify_congestion_tree,
)
from treeweave.cli import main
from treeweave.graph import cut_weight
from treeweave.routing import cut_loads, path_lengths, path_loads


def suite(seed, count, sizes, p=0.5, weights=(1, 10)):
    rng = random.Random(seed)
    return [random_demand_graph(rng.randint(*sizes), p, weights, rng) for _ in range(count)]


SUITE = suite(2024, 200, (4, 8))
_opt_cache: dict[int, int] = {}


def opt_of(i):
    if i not in _opt_cache:
        _opt_cache[i] = brute_opt_congestion(SUITE[i])[1]
    return _opt_cache[i]


def check_loads(tree, g):
    by_cut, by_path = cut_loads(tree, g), path_loads(tree, g)
    assert by_cut == by_path
    lengths = path_lengths(tree)
    assert sum(by_cut.values()) == sum(w * lengths[(u, v)] for u, v, w in g.edges)


@pytest.mark.criterion("1. approximation bound congestion <= 4 OPT")
def test_approximation_bound():
    start = time.perf_counter()
    violations = []
    for i, g in enumerate(SUITE):
        tree = route_tree(g, SeparatorStrategy.exact())
        value = max(cut_loads(tree, g).values(), default=0)
        if value > 4 * opt_of(i):
            violations.append((i, value, opt_of(i)))
    elapsed = time.perf_counter() - start
    assert violations == []
    assert elapsed < 60, f"took {elapsed:.1f} s"


@pytest.mark.criterion("2. lower bounds never exceed OPT")
def test_lower_bound_soundness():
    violations = []
    for i, g in enumerate(SUITE):
        lb_vertex, lb_separator = lower_bounds(g)
        assert lb_separator is not None
        if lb_vertex > opt_of(i) or lb_separator > opt_of(i):
            violations.append((i, lb_vertex, lb_separator, opt_of(i)))
    assert violations == []


@pytest.mark.criterion("3. subgraph monotonicity OPT(H) <= OPT(G)")
def test_subgraph_monotonicity():
    rng = random.Random(303)
    violations = 0
    for _ in range(100):
        n = rng.randint(2, 7)
        g = random_demand_graph(n, 0.5, (1, 10), rng)
        subset = rng.sample(range(n), rng.randint(1, n))
        h, _ = induced_subgraph(g, subset)
        if brute_opt_congestion(h)[1] > brute_opt_congestion(g)[1]:
            violations += 1
    assert violations == 0


@pytest.mark.criterion("4. Gomory-Hu all-pairs and spanning optimality")
def test_gomory_hu_correctness():
    for g in suite(404, 100, (2, 8)):
        tree = gomory_hu(g)
        for s in range(g.n):
            for t in range(s + 1, g.n):
                assert tree.path_min(s, t) == min_cut_st(g, s, t)[0]
    for g in suite(405, 50, (2, 7)):
        assert optimal_complete_tree(g)[1] == brute_opt_spanning_congestion(g)[1]


@pytest.mark.criterion("5. cut and path loads agree; total-load identity")
def test_load_equivalence():
    checked = 0
    for g in SUITE[:100]:
        for strategy in (SeparatorStrategy.exact(), SeparatorStrategy.heuristic(5)):
            for naive in (False, True):
                check_loads(route_tree(g, strategy, naive=naive), g)
                checked += 1
        check_loads(brute_opt_congestion(g)[0], g)
        checked += 1
    for g in suite(505, 30, (3, 6)):
        for tree in enum_routing_trees(range(g.n)):
            check_loads(tree, g)
            checked += 1
    assert checked > 500


@pytest.mark.criterion("6. separator referee")
def test_separator_referee():
    rng = random.Random(606)
    refereed = k = 0
    while refereed < 200:
        n = rng.randint(2, 10)
        g = random_demand_graph(n, 0.5, (1, 10), rng)
        u = VertexWeights([rng.randint(0, 10) for _ in range(n)])
        if u.total == 0:
            u = VertexWeights.unit(n)
        b = (Fraction(1, 4), Fraction(1, 3))[k % 2]
        k += 1
        cuts = list(enum_balanced_cuts(g, u, b))
        if not cuts:
            with pytest.raises(NoBalancedCut):
                exact_min_balanced_cut(g, u, b)
            continue
        refereed += 1
        best = min(cut_weight(g, c) for c in cuts)
        exact = exact_min_balanced_cut(g, u, b)
        assert is_balanced(u, exact, b) and cut_weight(g, exact) == best
        heur = heuristic_balanced_cut(g, u, b, SeparatorStrategy.heuristic(k))
        assert is_balanced(u, heur, b)
        assert cut_weight(g, heur) >= best


@pytest.mark.criterion("7. enumeration counts")
def test_enumeration_counts():
    for n, count in zip(range(3, 9), (1, 3, 15, 105, 945, 10395)):
        assert sum(1 for _ in enum_routing_trees(range(n))) == count
    for n in range(2, 8):
        assert sum(1 for _ in enum_spanning_trees(n)) == n ** (n - 2)


@pytest.mark.criterion("8. reduction counts and path-instance certificate")
def test_reduction():
    path = reduce_edp(EdpInstance(3, ((0, 1), (1, 2)), ((0, 2),)))
    assert (path.feasibility.n, len(path.feasibility.edges)) == (4, 3)
    assert len(path.demand.edges) == 1 and path.bound == 1
    # the s-t path uses every F edge, so F itself is the tree
    tree = [(u, v) for u, v, _ in path.feasibility.edges]
    assert verify_congestion_tree(path, tree)

    k4 = EdpInstance(4, tuple((u, v) for u in range(4) for v in range(u + 1, 4)), ((0, 2), (1, 3)))
    out = reduce_edp(k4)
    assert (out.feasibility.n, len(out.feasibility.edges)) == (12, 18)
    assert len(out.demand.edges) == 2 and out.bound == 1


@pytest.mark.criterion("9. byte-identical reruns")
def test_determinism(tmp_path, capsys):
    g = random_demand_graph(7, 0.5, (1, 10), random.Random(9))
    graph = tmp_path / "g.graph"
    graph.write_text(f"p {g.n} {len(g.edges)}\n" + "".join(f"e {u} {v} {w}\n" for u, v, w in g.edges))
    edp = tmp_path / "h.edp"
    edp.write_text("p 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\nd 0 2\n")
    commands = [
        ["route", str(graph), "--oracle"],
        ["route", str(graph), "--separator", "heuristic", "--seed", "11", "--restarts", "5"],
        ["route", str(graph), "--naive", "--b", "1/3"],
        ["gomory-hu", str(graph), "--check"],
        ["lower-bounds", str(graph)],
        ["reduce-edp", str(edp), "--out", str(tmp_path / "f"), str(tmp_path / "d")],
        ["bench", "--n", "4..7", "--count", "10", "--seed", "3", "--json", str(tmp_path / "bench.json")],
    ]
    for argv in commands:
        outputs = []
        for _ in range(2):
            assert main(argv) == 0
            stdout = capsys.readouterr().out
            extra = [p.read_bytes() for p in sorted(tmp_path.iterdir()) if p.suffix not in (".graph", ".edp")]
            outputs.append((stdout, extra))
        assert outputs[0] == outputs[1], argv[0]
        if argv[0] != "bench":
            json.loads(outputs[0][0])
