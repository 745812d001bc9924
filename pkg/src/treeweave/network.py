"""Congestion trees over a feasibility graph.

When every pair of sites may be linked, a Gomory-Hu cut tree of the demand
graph is an optimal congestion tree: each of its edges carries exactly the
minimum cut between its endpoints, and no tree can do better on that pair.
The tree is built with Gusfield's method (n - 1 max-flow calls on the
original graph, no contractions).

For general feasibility graphs the problem is NP-complete by reduction from
edge-disjoint paths; :func:`reduce_edp` builds that reduction's instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, InvariantError
from .graph import Cut, DemandGraph, cut_weight


def min_cut_st(g: DemandGraph, s: int, t: int) -> tuple[int, Cut]:
    """Maximum ``s``-``t`` flow value and the source side of a minimum cut.

    Uses shortest augmenting paths (BFS) on the residual network, with each
    undirected demand edge acting as a capacity in both directions. The
    returned side is everything reachable from ``s`` in the final residual
    network.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise InputError(f"terminals ({s}, {t}) are outside 0..{g.n - 1}")
    if s == t:
        raise InputError("source and sink must differ")
    residual = [dict(g.neighbors(v)) for v in g.vertices()]
    flow = 0
    while True:
        parent = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            x = queue.popleft()
            for y, cap in residual[x].items():
                if cap > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if t not in parent:
            return flow, Cut(tuple(parent), g.n)
        bottleneck = None
        y = t
        while y != s:
            x = parent[y]
            cap = residual[x][y]
            bottleneck = cap if bottleneck is None or cap < bottleneck else bottleneck
            y = x
        y = t
        while y != s:
            x = parent[y]
            residual[x][y] -= bottleneck
            residual[y][x] = residual[y].get(x, 0) + bottleneck
            y = x
        flow += bottleneck


@dataclass(frozen=True)
class GomoryHuTree:
    """Spanning tree on the demand vertices; ``edges`` holds ``(u, v, flow_value)``."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, f in self.edges:
            adj[u].append((v, f))
            adj[v].append((u, f))
        return adj

    def path_min(self, s: int, t: int) -> int:
        """Smallest flow value on the tree path from ``s`` to ``t``."""
        if s == t:
            raise InputError("path minimum needs two distinct vertices")
        adj = self.adjacency()
        best = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, f in adj[x]:
                if y not in best:
                    best[y] = f if best[x] is None else min(best[x], f)
                    queue.append(y)
        return best[t]


def gomory_hu(g: DemandGraph) -> GomoryHuTree:
    """Gomory-Hu cut tree by Gusfield's algorithm."""
    n = g.n
    if n < 1:
        raise InputError("Gomory-Hu tree of an empty graph")
    parent = [0] * n
    value = [0] * n
    for i in range(1, n):
        t = parent[i]
        f, cut = min_cut_st(g, i, t)
        value[i] = f
        side = set(cut.side)
        # every sibling on i's side moves under i, processed or not
        for j in range(n):
            if j != i and parent[j] == t and j in side:
                parent[j] = i
        if parent[t] in side:
            parent[i] = parent[t]
            parent[t] = i
            value[i] = value[t]
            value[t] = f
    edges = sorted((min(i, parent[i]), max(i, parent[i]), value[i]) for i in range(1, n))
    return GomoryHuTree(n, tuple(edges))


def _tree_side(n: int, edges: Sequence[tuple[int, int]], a: int, b: int) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    seen = {a, b}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    seen.discard(b)
    return sorted(seen)


def _connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    seen = {0} if n else set()
    stack = list(seen)
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def spanning_tree_loads(g: DemandGraph, tree_edges: Sequence[tuple[int, int]]) -> list[int]:
    """Load of each edge of a spanning tree whose nodes are the demand vertices."""
    return [cut_weight(g, _tree_side(g.n, tree_edges, a, b)) for a, b in tree_edges]


def optimal_complete_tree(g: DemandGraph) -> tuple[GomoryHuTree, int]:
    """Minimum-congestion spanning tree when any two sites may be linked."""
    if g.n < 2:
        raise InputError("need at least two vertices")
    tree = gomory_hu(g)
    pairs = [(u, v) for u, v, _ in tree.edges]
    loads = spanning_tree_loads(g, pairs)
    for (u, v, f), load in zip(tree.edges, loads):
        if load != f:
            raise InvariantError(f"tree edge ({u}, {v}) carries {load} but its min cut is {f}")
    return tree, max(loads)


@dataclass(frozen=True)
class EdpInstance:
    """Edge-disjoint paths instance: an unweighted graph and terminal pairs."""

    n: int
    edges: tuple[tuple[int, int], ...]
    pairs: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        canon = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise InputError(f"invalid edge ({u}, {v})")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "pairs", tuple((int(s), int(t)) for s, t in self.pairs))
        for s, t in self.pairs:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise InputError(f"demand pair ({s}, {t}) names a vertex outside 0..{self.n - 1}")

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


@dataclass(frozen=True)
class CongestionInstance:
    """Feasibility graph, demand graph on the same vertices, and a load bound.

    ``ports[u]`` lists the feasibility vertices that replace vertex ``u`` of
    the source graph; ``edge_ports`` and ``demand_ports`` record which port
    pair realizes each source edge and each demand.
    """

    feasibility: DemandGraph
    demand: DemandGraph
    bound: int
    ports: tuple[tuple[int, ...], ...] = ()
    edge_ports: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()
    demand_ports: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()

    def __post_init__(self):
        if self.feasibility.n != self.demand.n:
            raise InputError("feasibility and demand graphs must share the vertex set")
        if self.bound < 0:
            raise InputError("load bound must be nonnegative")


def reduce_edp(inst: EdpInstance) -> CongestionInstance:
    """Congestion-tree instance with bound 1 equivalent to ``inst``.

    Every vertex ``u`` of degree ``d`` becomes a clique on ``d`` port
    vertices. Each source edge, taken in sorted order, joins the next free
    port of each endpoint. The ``i``-th demand ``(s, t)`` becomes a unit
    demand between the next port of ``s`` and the next port of ``t`` not
    yet used by another demand.
    """
    degree = [0] * inst.n
    for u, v in inst.edges:
        degree[u] += 1
        degree[v] += 1
    uses = [0] * inst.n
    for s, t in inst.pairs:
        uses[s] += 1
        uses[t] += 1
    for v in range(inst.n):
        if uses[v] and degree[v] == 0:
            raise InputError(f"terminal {v} has degree 0")
        if uses[v] > degree[v]:
            raise InputError(f"terminal {v} appears in {uses[v]} demands but has degree {degree[v]}")

    offset = [0] * (inst.n + 1)
    for v in range(inst.n):
        offset[v + 1] = offset[v] + degree[v]
    ports = tuple(tuple(range(offset[v], offset[v + 1])) for v in range(inst.n))

    f_edges = []
    for v in range(inst.n):
        p = ports[v]
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                f_edges.append((p[i], p[j], 1))
    next_port = [0] * inst.n
    edge_ports = []
    for u, v in inst.edges:
        pu, pv = offset[u] + next_port[u], offset[v] + next_port[v]
        next_port[u] += 1
        next_port[v] += 1
        f_edges.append((pu, pv, 1))
        edge_ports.append(((u, v), (pu, pv)))

    demand_port = [0] * inst.n
    d_edges = []
    demand_ports = []
    for s, t in inst.pairs:
        ps = offset[s] + demand_port[s]
        demand_port[s] += 1
        pt = offset[t] + demand_port[t]
        demand_port[t] += 1
        d_edges.append((ps, pt, 1))
        demand_ports.append(((s, t), (ps, pt)))

    labels = None
    if inst.labels is not None:
        labels = [f"{inst.labels[v]}_{k + 1}" for v in range(inst.n) for k in range(degree[v])]
    size = offset[inst.n]
    return CongestionInstance(
        feasibility=DemandGraph(size, f_edges, labels),
        demand=DemandGraph(size, d_edges, labels),
        bound=1,
        ports=ports,
        edge_ports=tuple(edge_ports),
        demand_ports=tuple(demand_ports),
    )


def verify_congestion_tree(inst: CongestionInstance, tree_edges: Iterable[tuple[int, int]]) -> bool:
    """True iff ``tree_edges`` form a spanning tree of the feasibility graph
    and every tree edge carries at most ``inst.bound`` demand."""
    f = inst.feasibility
    edges = []
    for e in tree_edges:
        try:
            a, b = e
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed tree edge {e!r}") from exc
        if not (isinstance(a, int) and isinstance(b, int)):
            raise InputError(f"malformed tree edge {e!r}")
        if not (0 <= a < f.n and 0 <= b < f.n) or a == b or f.weight(a, b) == 0:
            raise InputError(f"({a}, {b}) is not an edge of the feasibility graph")
        edges.append((min(a, b), max(a, b)))
    if len(set(edges)) != len(edges) or len(edges) != f.n - 1:
        return False
    # n - 1 distinct edges form a spanning tree iff they connect every vertex
    if not _connected(f.n, edges):
        return False
    return all(load <= inst.bound for load in spanning_tree_loads(inst.demand, edges))
