"""Named small graphs and hypothesis strategies shared by the tests."""

from hypothesis import strategies as st

from treeweave import DemandGraph


def cycle4():
    return DemandGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])


def triangle():
    return DemandGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def star3():
    return DemandGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])


def weighted_path():
    return DemandGraph(3, [(0, 1, 3), (1, 2, 2)])


@st.composite
def demand_graphs(draw, min_n=1, max_n=8, max_weight=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = [(u, v, draw(st.integers(0, max_weight))) for u, v in chosen]
    return DemandGraph(n, edges)


@st.composite
def graphs_with_subset(draw, min_n=1, max_n=8):
    g = draw(demand_graphs(min_n=min_n, max_n=max_n))
    subset = draw(st.sets(st.integers(0, g.n - 1)))
    return g, subset
