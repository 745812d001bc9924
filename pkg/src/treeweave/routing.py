"""Routing trees: construction by recursive balanced bisection, and loads.

A routing tree has one leaf per demand-graph vertex and internal nodes of
degree 3. Each demand travels along the unique leaf-to-leaf path; the load
of a tree edge is the demand crossing the leaf bipartition it induces, and
the congestion is the maximum load.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InputError, InvariantError
from .graph import (
    DemandGraph,
    VertexWeights,
    cut_weight,
    induced_subgraph,
    outside_demand_weights,
    vertex_load,
)
from .separator import (
    DEFAULT_B,
    EXACT_LIMIT,
    SeparatorStrategy,
    as_balance,
    exact_min_balanced_cut,
)

Edge = tuple[int, int]

LOWER_BOUND_B = Fraction(1, 3)


@dataclass(frozen=True)
class RoutingTree:
    """A leaf-labeled tree.

    ``roles[i]`` is the demand-graph vertex carried by node ``i``, or None
    for an internal node. Edges are canonical ``(a, b)`` pairs with
    ``a < b``, sorted. ``root`` is only set on trees still under
    construction.
    """

    roles: tuple[int | None, ...]
    edges: tuple[Edge, ...]
    root: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "roles", tuple(self.roles))
        object.__setattr__(self, "edges", tuple(sorted((min(a, b), max(a, b)) for a, b in self.edges)))

    @property
    def num_nodes(self) -> int:
        return len(self.roles)

    def leaves(self) -> dict[int, int]:
        """Demand vertex -> tree node."""
        return {v: i for i, v in enumerate(self.roles) if v is not None}

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.roles]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def degree(self, node: int) -> int:
        return sum(1 for a, b in self.edges if node in (a, b))

    def is_tree(self) -> bool:
        n = len(self.roles)
        if n == 0 or len(self.edges) != n - 1:
            return False
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == n

    def check(self, n_vertices: int | None = None) -> None:
        """Raise :class:`InvariantError` unless this is a finalized routing tree."""
        if not self.is_tree():
            raise InvariantError("routing tree is not connected and acyclic")
        labels = [v for v in self.roles if v is not None]
        if len(set(labels)) != len(labels):
            raise InvariantError("a demand vertex labels more than one leaf")
        if n_vertices is not None and sorted(labels) != list(range(n_vertices)):
            raise InvariantError("leaves are not in bijection with the demand vertices")
        n = len(labels)
        adj = self.adjacency()
        for i, v in enumerate(self.roles):
            deg = len(adj[i])
            if v is None and deg != 3:
                raise InvariantError(f"internal node {i} has degree {deg}")
            if v is not None and n >= 2 and deg != 1:
                raise InvariantError(f"leaf node {i} has degree {deg}")
        if n >= 3 and len(self.roles) - n != n - 2:
            raise InvariantError("a routing tree on n leaves needs n - 2 internal nodes")

    def splits(self) -> frozenset[frozenset[int]]:
        """Leaf bipartitions induced by the edges, as the side without the
        smallest label. Two trees with the same splits are the same topology."""
        labels = frozenset(v for v in self.roles if v is not None)
        low = min(labels) if labels else None
        out = set()
        for e in self.edges:
            side = frozenset(_side_labels(self, e))
            out.add(labels - side if low in side else side)
        return frozenset(out)


def _component(adj: list[list[int]], start: int, banned: int) -> list[int]:
    seen = {start, banned}
    stack = [start]
    out = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
                out.append(y)
    return out


def _side_labels(t: RoutingTree, e: Edge) -> list[int]:
    a, b = e
    comp = _component(t.adjacency(), a, b)
    return [t.roles[x] for x in comp if t.roles[x] is not None]


def shortcut_degree_two(t: RoutingTree, order: Iterable[int] | None = None) -> RoutingTree:
    """Remove every unlabeled node of degree 2 by joining its two neighbors.

    ``order`` optionally fixes the sequence in which candidates are tried;
    the result does not depend on it. Surviving nodes keep their relative
    order and are renumbered densely. The root marker is dropped.
    """
    adj = [set(x) for x in t.adjacency()]
    alive = [True] * len(t.roles)
    pending = list(order) if order is not None else list(range(len(t.roles)))
    pending += [i for i in range(len(t.roles)) if i not in set(pending)]
    changed = True
    while changed:
        changed = False
        for x in pending:
            if alive[x] and t.roles[x] is None and len(adj[x]) == 2:
                y, z = adj[x]
                adj[y].discard(x)
                adj[z].discard(x)
                adj[y].add(z)
                adj[z].add(y)
                adj[x].clear()
                alive[x] = False
                changed = True
    new_id = {}
    for i in range(len(t.roles)):
        if alive[i]:
            new_id[i] = len(new_id)
    roles = [t.roles[i] for i in range(len(t.roles)) if alive[i]]
    edges = {(min(new_id[x], new_id[y]), max(new_id[x], new_id[y]))
             for x in new_id for y in adj[x]}
    return RoutingTree(tuple(roles), tuple(edges))


def canonical_form(t: RoutingTree) -> RoutingTree:
    """Renumber so leaf nodes come first in label order, internals after in
    their existing order."""
    leaf_nodes = sorted((v, i) for i, v in enumerate(t.roles) if v is not None)
    internal = [i for i, v in enumerate(t.roles) if v is None]
    mapping = {i: k for k, (_, i) in enumerate(leaf_nodes)}
    for i in internal:
        mapping[i] = len(mapping)
    roles = [None] * len(t.roles)
    for i, v in enumerate(t.roles):
        roles[mapping[i]] = v
    edges = tuple((mapping[a], mapping[b]) for a, b in t.edges)
    root = None if t.root is None else mapping[t.root]
    return RoutingTree(tuple(roles), edges, root)


def route_tree(
    g: DemandGraph,
    strategy: SeparatorStrategy | None = None,
    b=DEFAULT_B,
    *,
    naive: bool = False,
) -> RoutingTree:
    """Build a routing tree by recursive balanced bisection.

    A piece ``S`` of one or two vertices becomes a leaf or a cherry.
    Otherwise every vertex of ``S`` is weighted by its demand to vertices
    outside ``S`` (unit weights if that demand is zero, which is always the
    case for the whole vertex set). A vertex holding more than half of the
    total weight is split off alone; otherwise ``S`` is cut by a
    ``b``-balanced separator of the subgraph it induces. The two pieces'
    trees hang from a fresh root, and degree-2 nodes are short-cut at the
    end.

    With ``naive=True`` every piece is split under unit weights. This is
    the plain divide-and-conquer baseline, kept for benchmarking.
    """
    if g.n == 0:
        raise InputError("cannot build a routing tree for an empty graph")
    strategy = strategy if strategy is not None else SeparatorStrategy.exact()
    b = as_balance(b)
    if b > LOWER_BOUND_B:
        raise InputError(f"route_tree needs b <= 1/3 so that every split exists, got {b}")

    roles: list[int | None] = []
    edges: list[Edge] = []

    def new_node(role: int | None, parent: int | None) -> int:
        roles.append(role)
        node = len(roles) - 1
        if parent is not None:
            edges.append((parent, node))
        return node

    root = None
    work: deque[tuple[tuple[int, ...], int | None]] = deque([(tuple(range(g.n)), None)])
    while work:
        piece, parent = work.popleft()
        if len(piece) == 1:
            node = new_node(piece[0], parent)
            root = node if parent is None else root
            continue
        node = new_node(None, parent)
        root = node if parent is None else root
        if len(piece) == 2:
            new_node(piece[0], node)
            new_node(piece[1], node)
            continue
        for part in _split(g, piece, strategy, b, naive):
            work.append((part, node))

    tree = RoutingTree(tuple(roles), tuple(edges), root)
    return canonical_form(shortcut_degree_two(tree))


def _split(
    g: DemandGraph,
    piece: tuple[int, ...],
    strategy: SeparatorStrategy,
    b: Fraction,
    naive: bool,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    u = outside_demand_weights(g, piece)
    if naive or u.total == 0:
        u = VertexWeights.unit(len(piece))
    else:
        for i, v in enumerate(piece):
            if 2 * u[i] > u.total:
                return (v,), tuple(x for x in piece if x != v)
    sub, old_ids = induced_subgraph(g, piece)
    cut = strategy.split(sub, u, b)
    inside = set(cut.side)
    first = tuple(old_ids[i] for i in range(len(old_ids)) if i in inside)
    second = tuple(old_ids[i] for i in range(len(old_ids)) if i not in inside)
    return first, second


def _validate_edge(t: RoutingTree, e: Edge) -> Edge:
    try:
        a, b = e
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed tree edge {e!r}") from exc
    edge = (min(a, b), max(a, b))
    if edge not in set(t.edges):
        raise InputError(f"{e!r} is not an edge of the tree")
    return edge


def edge_load(t: RoutingTree, g: DemandGraph, e: Edge) -> int:
    """Demand crossing the leaf bipartition induced by tree edge ``e``."""
    edge = _validate_edge(t, e)
    return cut_weight(g, _side_labels(t, edge))


def _check_bijection(t: RoutingTree, g: DemandGraph) -> dict[int, int]:
    leaves = t.leaves()
    if len(leaves) != sum(1 for v in t.roles if v is not None) or sorted(leaves) != list(range(g.n)):
        raise InputError("tree leaves are not in bijection with the graph's vertices")
    return leaves


def _rooted(t: RoutingTree):
    adj = t.adjacency()
    parent = [-1] * t.num_nodes
    depth = [0] * t.num_nodes
    order = [0]
    seen = {0}
    for x in order:
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                parent[y] = x
                depth[y] = depth[x] + 1
                order.append(y)
    return parent, depth, order


def cut_loads(t: RoutingTree, g: DemandGraph) -> dict[Edge, int]:
    """Load of every tree edge as the weight of the cut it induces."""
    _check_bijection(t, g)
    if t.num_nodes == 1:
        return {}
    parent, _, order = _rooted(t)
    below: list[set[int]] = [set() for _ in range(t.num_nodes)]
    loads = {}
    for x in reversed(order):
        if t.roles[x] is not None:
            below[x].add(t.roles[x])
        p = parent[x]
        if p >= 0:
            loads[(min(x, p), max(x, p))] = cut_weight(g, below[x])
            below[p] |= below[x]
    return {e: loads[e] for e in t.edges}


def path_loads(t: RoutingTree, g: DemandGraph) -> dict[Edge, int]:
    """Load of every tree edge by walking each demand along its tree path."""
    leaves = _check_bijection(t, g)
    loads = {e: 0 for e in t.edges}
    if t.num_nodes == 1:
        return loads
    parent, depth, _ = _rooted(t)
    for a, b, w in g.edges:
        x, y = leaves[a], leaves[b]
        while x != y:
            if depth[x] < depth[y]:
                x, y = y, x
            p = parent[x]
            loads[(min(x, p), max(x, p))] += w
            x = p
    return loads


def path_lengths(t: RoutingTree) -> dict[tuple[int, int], int]:
    """Number of tree edges between every pair of labeled leaves."""
    adj = t.adjacency()
    leaves = t.leaves()
    out = {}
    for a, node in leaves.items():
        dist = {node: 0}
        queue = deque([node])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for b, other in leaves.items():
            out[(a, b)] = dist[other]
    return out


@dataclass(frozen=True)
class CongestionReport:
    per_edge: tuple[tuple[Edge, int], ...]
    congestion: int
    lb_vertex: int
    lb_separator: int | None = None
    ratio_upper_cert: Fraction | None = None

    @property
    def lower_bound(self) -> int:
        return max(self.lb_vertex, self.lb_separator or 0)


def lower_bounds(g: DemandGraph, limit: int = EXACT_LIMIT) -> tuple[int, int | None]:
    """Certified lower bounds on the optimal congestion.

    The first is the largest vertex load. The second is the minimum
    1/3-balanced cut under unit vertex weights, found exactly; it is None
    for fewer than two vertices or more than ``limit``.
    """
    lb_vertex = max((vertex_load(g, v) for v in g.vertices()), default=0)
    lb_separator = None
    if 2 <= g.n <= limit:
        cut = exact_min_balanced_cut(g, VertexWeights.unit(g.n), LOWER_BOUND_B, limit=limit)
        lb_separator = cut_weight(g, cut)
    return lb_vertex, lb_separator


def congestion_report(
    t: RoutingTree,
    g: DemandGraph,
    with_separator_lb: bool = True,
    limit: int = EXACT_LIMIT,
) -> CongestionReport:
    """Per-edge loads, congestion and lower bounds for ``t`` routing ``g``.

    Loads are computed twice, from induced cuts and by path accumulation,
    and must agree.
    """
    by_cut = cut_loads(t, g)
    by_path = path_loads(t, g)
    if by_cut != by_path:
        raise InvariantError("cut-based and path-based edge loads disagree")
    per_edge = tuple((e, by_cut[e]) for e in t.edges)
    congestion = max((load for _, load in per_edge), default=0)
    if with_separator_lb:
        lb_vertex, lb_separator = lower_bounds(g, limit)
    else:
        lb_vertex, lb_separator = lower_bounds(g, limit=0)
    lb = max(lb_vertex, lb_separator or 0)
    if lb > congestion:
        raise InvariantError(f"lower bound {lb} exceeds the congestion {congestion}")
    ratio = Fraction(congestion, lb) if lb > 0 else None
    return CongestionReport(per_edge, congestion, lb_vertex, lb_separator, ratio)


def congestion(t: RoutingTree, g: DemandGraph) -> int:
    return max(cut_loads(t, g).values(), default=0)

