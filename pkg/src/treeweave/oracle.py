"""Exhaustive ground truth for small instances.

Everything here enumerates a full search space, so sizes are capped:

* routing-tree topologies on n leaves: (2n-5)!!, 2,027,025 at n = 10;
* labeled spanning trees on n vertices: n**(n-2), 16,807 at n = 7;
* vertex subsets: 2**n.

The routing-tree cap can be lowered or raised with the
``TREEWEAVE_ORACLE_CAP`` environment variable.
"""

from __future__ import annotations

import heapq
import itertools
import os
from typing import Iterator, Sequence

from .errors import InputError
from .graph import Cut, DemandGraph, VertexWeights
from .routing import RoutingTree
from .separator import as_balance, is_balanced

ROUTING_CAP = 10
SPANNING_CAP = 7
SUBSET_CAP = 10


def oracle_cap() -> int:
    raw = os.environ.get("TREEWEAVE_ORACLE_CAP")
    if raw is None:
        return ROUTING_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputError(f"TREEWEAVE_ORACLE_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InputError("TREEWEAVE_ORACLE_CAP must be positive")
    return cap


def double_factorial_count(n: int) -> int:
    """Number of routing-tree topologies on ``n`` labeled leaves."""
    count = 1
    for k in range(3, 2 * n - 4, 2):
        count *= k
    return count


def _subset_sums(g: DemandGraph) -> list[list[int]]:
    """``table[x][mask]`` = total weight from ``x`` to the vertices in ``mask``."""
    n = g.n
    mat = g.matrix()
    table = []
    for x in range(n):
        row = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            row[mask] = row[mask ^ low] + mat[x][low.bit_length() - 1]
        table.append(row)
    return table


def _insert_leaves(n: int, sums: list[list[int]] | None, incumbent: list):
    """Stepwise-insertion enumeration of topologies on leaves ``0..n-1``.

    Yields ``(edges, loads)`` for complete trees. Edges are ``(a, b)`` node
    pairs with leaves ``0..n-1`` and internal nodes numbered from ``n`` in
    creation order. When ``sums`` is given, loads are tracked on the
    subgraph induced by the leaves inserted so far (a lower bound on the
    final loads) and branches whose congestion already reaches
    ``incumbent[0]`` are skipped.
    """
    # each edge: [a, b, mask of leaves on b's side, load]
    start = [[n, 0, 1, 0], [n, 1, 2, 0], [n, 2, 4, 0]]
    if sums is not None:
        for e in start:
            e[3] = sums[e[1]][7 ^ e[2]]

    def grow(edges, k):
        if k == n:
            yield edges
            return
        everyone = (1 << k) - 1
        x_bit = 1 << k
        c = n + k - 2
        row = sums[k] if sums is not None else None
        for i, (a, b, mask, load) in enumerate(edges):
            other = everyone ^ mask
            new_edges = []
            worst = 0
            for j, (p, q, m, ld) in enumerate(edges):
                if j == i:
                    continue
                p_side = everyone ^ m
                if p_side & ~other == 0 or p_side & ~mask == 0:
                    m2, ld2 = m | x_bit, (ld + row[p_side] if row else 0)
                else:
                    m2, ld2 = m, (ld + row[m] if row else 0)
                new_edges.append([p, q, m2, ld2])
                worst = ld2 if ld2 > worst else worst
            if row:
                fresh = [
                    [a, c, mask | x_bit, load + row[other]],
                    [c, b, mask, load + row[mask]],
                    [c, k, x_bit, row[everyone]],
                ]
                worst = max(worst, fresh[0][3], fresh[1][3], fresh[2][3])
                if incumbent[0] is not None and worst >= incumbent[0]:
                    continue
            else:
                fresh = [[a, c, mask | x_bit, 0], [c, b, mask, 0], [c, k, x_bit, 0]]
            new_edges[i:i] = fresh[:1]
            new_edges.extend(fresh[1:])
            yield from grow(new_edges, k + 1)

    yield from grow(start, 3)


def _to_tree(labels: Sequence[int], edges) -> RoutingTree:
    n = len(labels)
    roles = tuple(labels) + (None,) * (n - 2)
    return RoutingTree(roles, tuple((a, b) for a, b, _, _ in edges))


def _check_labels(labels: Sequence[int], cap: int) -> tuple[int, ...]:
    labels = tuple(labels)
    if not 1 <= len(labels) <= cap:
        raise InputError(f"topology enumeration supports 1..{cap} leaves, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise InputError("leaf labels must be distinct")
    return labels


def enum_routing_trees(labels: Sequence[int], cap: int | None = None) -> Iterator[RoutingTree]:
    """Every routing-tree topology on the given leaf labels, exactly once."""
    labels = _check_labels(labels, oracle_cap() if cap is None else cap)
    n = len(labels)
    if n == 1:
        yield RoutingTree(labels, ())
        return
    if n == 2:
        yield RoutingTree(labels, ((0, 1),))
        return
    for edges in _insert_leaves(n, None, [None]):
        yield _to_tree(labels, edges)


def brute_opt_congestion(g: DemandGraph, cap: int | None = None) -> tuple[RoutingTree, int]:
    """Minimum congestion over all routing trees of ``g`` and the first tree
    (in :func:`enum_routing_trees` order) attaining it."""
    labels = _check_labels(range(g.n), oracle_cap() if cap is None else cap)
    n = len(labels)
    if n == 1:
        return RoutingTree(labels, ()), 0
    if n == 2:
        return RoutingTree(labels, ((0, 1),)), g.weight(0, 1)
    sums = _subset_sums(g)
    incumbent = [None]
    witness = None
    for edges in _insert_leaves(n, sums, incumbent):
        worst = max(e[3] for e in edges)
        if incumbent[0] is None or worst < incumbent[0]:
            incumbent[0] = worst
            witness = [list(e) for e in edges]
    return _to_tree(labels, witness), incumbent[0]


def _decode_with_masks(seq: Sequence[int], n: int):
    """Decode a Pruefer sequence; yields ``(leaf, parent, leaf_side_mask)``."""
    degree = [1] * n
    for p in seq:
        degree[p] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    below = [1 << v for v in range(n)]
    for p in seq:
        x = heapq.heappop(heap)
        yield x, p, below[x]
        below[p] |= below[x]
        degree[p] -= 1
        if degree[p] == 1:
            heapq.heappush(heap, p)
    x, y = heapq.heappop(heap), heapq.heappop(heap)
    yield x, y, below[x]


def enum_spanning_trees(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All ``n**(n-2)`` labeled trees on ``0..n-1``, as sorted edge tuples."""
    if not 2 <= n <= SPANNING_CAP:
        raise InputError(f"spanning-tree enumeration supports 2..{SPANNING_CAP} vertices, got {n}")
    for seq in itertools.product(range(n), repeat=n - 2):
        yield tuple(sorted((min(x, p), max(x, p)) for x, p, _ in _decode_with_masks(seq, n)))


def brute_opt_spanning_congestion(g: DemandGraph) -> tuple[tuple[tuple[int, int], ...], int]:
    """Minimum over all spanning trees on ``g``'s vertices of the maximum
    edge load, with the first optimal tree in Pruefer order."""
    n = g.n
    if not 2 <= n <= SPANNING_CAP:
        raise InputError(f"spanning-tree oracle supports 2..{SPANNING_CAP} vertices, got {n}")
    full = (1 << n) - 1
    sums = _subset_sums(g)
    cut = [0] * (1 << n)
    for mask in range(1 << n):
        cut[mask] = sum(sums[x][full ^ mask] for x in range(n) if mask >> x & 1)
    best, witness = None, None
    for seq in itertools.product(range(n), repeat=n - 2):
        worst = 0
        edges = []
        for x, p, mask in _decode_with_masks(seq, n):
            load = cut[mask]
            worst = load if load > worst else worst
            edges.append((min(x, p), max(x, p)))
        if best is None or worst < best:
            best, witness = worst, tuple(sorted(edges))
    return witness, best


def enum_balanced_cuts(g: DemandGraph, u: VertexWeights, b) -> Iterator[Cut]:
    """Every proper balanced cut, once per complementary pair (the side
    holding vertex 0), in increasing bitmask order."""
    b = as_balance(b)
    n = g.n
    if n > SUBSET_CAP:
        raise InputError(f"subset enumeration supports at most {SUBSET_CAP} vertices, got {n}")
    if len(u) != n:
        raise InputError(f"vertex weights cover {len(u)} vertices, graph has {n}")
    full = (1 << n) - 1
    for mask in range(1, full, 2):
        cut = Cut.from_mask(mask, n)
        if is_balanced(u, cut, b):
            yield cut
