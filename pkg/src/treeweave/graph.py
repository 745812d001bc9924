"""Demand graphs, vertex weights and cuts.

Vertices are dense integer ids ``0..n-1``. Edge weights are nonnegative
integers (demand units); every computation in the package is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError

WEIGHT_LIMIT = 1 << 62


class DemandGraph:
    """Undirected demand network with integer edge weights.

    Parallel edges are merged by summing their weights. Edges are stored
    canonically as ``(u, v, w)`` with ``u < v``, sorted. Instances are
    treated as immutable.
    """

    __slots__ = ("_n", "_edges", "_adj", "_labels", "_total")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, int]] = (),
        labels: Sequence[str] | None = None,
    ):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {n!r}")
        merged: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not isinstance(w, int) or w < 0:
                raise InputError(f"edge ({u}, {v}) has invalid weight {w!r}")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0) + w
        total = sum(merged.values())
        if total >= WEIGHT_LIMIT:
            raise InputError("total edge weight must stay below 2**62")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise InputError(f"expected {n} labels, got {len(labels)}")
        self._n = n
        self._edges = tuple((u, v, w) for (u, v), w in sorted(merged.items()))
        self._labels = labels
        self._total = total
        adj: list[dict[int, int]] = [{} for _ in range(n)]
        for u, v, w in self._edges:
            adj[u][v] = w
            adj[v][u] = w
        self._adj = tuple(adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[tuple[int, int, int], ...]:
        return self._edges

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    @property
    def total_weight(self) -> int:
        return self._total

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> Mapping[int, int]:
        """Neighbor -> weight mapping of ``v``. Do not mutate."""
        self._check_vertex(v)
        return self._adj[v]

    def weight(self, u: int, v: int) -> int:
        self._check_vertex(u)
        return self._adj[u].get(v, 0)

    def label(self, v: int) -> str:
        self._check_vertex(v)
        return self._labels[v] if self._labels is not None else str(v)

    def matrix(self) -> list[list[int]]:
        """Dense weight matrix; a fresh copy on every call."""
        mat = [[0] * self._n for _ in range(self._n)]
        for u, v, w in self._edges:
            mat[u][v] = w
            mat[v][u] = w
        return mat

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self._n):
            raise InputError(f"vertex {v!r} is outside 0..{self._n - 1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DemandGraph):
            return NotImplemented
        return (self._n, self._edges, self._labels) == (other._n, other._edges, other._labels)

    def __hash__(self) -> int:
        return hash((self._n, self._edges, self._labels))

    def __repr__(self) -> str:
        return f"DemandGraph(n={self._n}, m={len(self._edges)}, total={self._total})"


@dataclass(frozen=True)
class VertexWeights:
    """Nonnegative integer weight per vertex, indexed by vertex id."""

    weights: tuple[int, ...]

    def __post_init__(self):
        weights = tuple(self.weights)
        for v, w in enumerate(weights):
            if not isinstance(w, int) or w < 0:
                raise InputError(f"vertex weight of {v} must be a nonnegative integer, got {w!r}")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def unit(cls, n: int) -> VertexWeights:
        return cls((1,) * n)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, v: int) -> int:
        return self.weights[v]

    def of(self, subset: Iterable[int]) -> int:
        """``U(S)``."""
        return sum(self.weights[v] for v in subset)

    def restrict(self, subset: Sequence[int]) -> VertexWeights:
        """Weights of ``subset`` re-indexed densely in the given order."""
        return VertexWeights(tuple(self.weights[v] for v in subset))


@dataclass(frozen=True)
class Cut:
    """A vertex subset ``S`` of the universe ``0..universe_size-1``.

    The side is stored sorted and deduplicated, so two cuts compare equal
    exactly when they name the same set.
    """

    side: tuple[int, ...]
    universe_size: int

    def __post_init__(self):
        side = tuple(sorted(set(self.side)))
        if side and (side[0] < 0 or side[-1] >= self.universe_size):
            raise InputError(f"cut side {side} is not within 0..{self.universe_size - 1}")
        object.__setattr__(self, "side", side)

    @classmethod
    def from_mask(cls, mask: int, universe_size: int) -> Cut:
        return cls(tuple(v for v in range(universe_size) if mask >> v & 1), universe_size)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.side:
            m |= 1 << v
        return m

    def complement(self) -> Cut:
        inside = set(self.side)
        return Cut(tuple(v for v in range(self.universe_size) if v not in inside), self.universe_size)

    def is_proper(self) -> bool:
        return 0 < len(self.side) < self.universe_size

    def __contains__(self, v: object) -> bool:
        return v in self.side

    def __len__(self) -> int:
        return len(self.side)

    def __iter__(self):
        return iter(self.side)


def _members(g: DemandGraph, s: Cut | Iterable[int]) -> frozenset[int]:
    if isinstance(s, Cut):
        if s.universe_size != g.n:
            raise InputError(f"cut over {s.universe_size} vertices used with a graph of {g.n}")
        return frozenset(s.side)
    members = frozenset(s)
    for v in members:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise InputError(f"vertex {v!r} is outside 0..{g.n - 1}")
    return members


def cut_weight(g: DemandGraph, s: Cut | Iterable[int]) -> int:
    """Total weight of edges with exactly one endpoint in ``s``."""
    inside = _members(g, s)
    return sum(w for u, v, w in g.edges if (u in inside) != (v in inside))


def vertex_load(g: DemandGraph, v: int) -> int:
    """``W(v)``, the total demand incident to ``v``."""
    return sum(g.neighbors(v).values())


def induced_subgraph(
    g: DemandGraph, s: Iterable[int]
) -> tuple[DemandGraph, tuple[int, ...]]:
    """Subgraph induced by ``s``.

    Returns ``(h, old_ids)`` where vertex ``i`` of ``h`` is vertex
    ``old_ids[i]`` of ``g``; ``old_ids`` is sorted.
    """
    members = sorted(_members(g, s))
    if not members:
        raise InputError("induced subgraph of an empty vertex set")
    new_id = {old: i for i, old in enumerate(members)}
    edges = [(new_id[u], new_id[v], w) for u, v, w in g.edges if u in new_id and v in new_id]
    labels = None if g.labels is None else [g.labels[v] for v in members]
    return DemandGraph(len(members), edges, labels), tuple(members)


def outside_demand_weights(g: DemandGraph, s: Iterable[int]) -> VertexWeights:
    """Per-vertex demand from each member of ``s`` to the rest of the graph.

    The result is indexed by the position of the vertex in ``sorted(s)``,
    matching the re-indexing of :func:`induced_subgraph`.
    """
    inside = _members(g, s)
    return VertexWeights(tuple(
        sum(w for x, w in g.neighbors(v).items() if x not in inside)
        for v in sorted(inside)
    ))


def random_demand_graph(
    n: int,
    p: float = 0.5,
    weights: tuple[int, int] = (1, 10),
    rng: random.Random | None = None,
) -> DemandGraph:
    """Erdos-Renyi demand graph with uniform integer weights in ``weights``."""
    rng = rng if rng is not None else random.Random(0)
    lo, hi = weights
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, rng.randint(lo, hi)))
    return DemandGraph(n, edges)
