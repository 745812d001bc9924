"""Balanced cuts under vertex weights.

Two separators share one contract: given a demand graph, vertex weights
``U`` and a balance parameter ``b``, return a proper cut ``S`` with
``b*U(V) <= U(S) <= (1-b)*U(V)``.

* :func:`exact_min_balanced_cut` is a branch-and-bound search that returns
  a minimum-weight balanced cut (approximation factor 1) for small graphs.
* :func:`heuristic_balanced_cut` is a randomized local search with no
  approximation guarantee, meant for graphs beyond the exact limit.

Both return the side containing the smallest vertex id and break ties
the same way: lower cut weight, then smaller ``|2*U(S) - U(V)|``, then the
lexicographically smallest side.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, InputError, NoBalancedCut
from .graph import Cut, DemandGraph, VertexWeights

EXACT_LIMIT = 24
DEFAULT_NODE_BUDGET = 10**8
DEFAULT_B = Fraction(1, 4)


class SeparatorKind(str, enum.Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class SeparatorStrategy:
    """Which separator to run and with what knobs.

    ``seed`` and ``restarts`` only matter for the heuristic, ``node_budget``
    only for the exact search.
    """

    kind: SeparatorKind = SeparatorKind.EXACT
    seed: int = 0
    restarts: int = 20
    node_budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        object.__setattr__(self, "kind", SeparatorKind(self.kind))
        if self.restarts < 1:
            raise InputError("restarts must be positive")
        if self.node_budget < 1:
            raise InputError("node_budget must be positive")

    @classmethod
    def exact(cls, node_budget: int = DEFAULT_NODE_BUDGET) -> SeparatorStrategy:
        return cls(SeparatorKind.EXACT, node_budget=node_budget)

    @classmethod
    def heuristic(cls, seed: int = 0, restarts: int = 20) -> SeparatorStrategy:
        return cls(SeparatorKind.HEURISTIC, seed=seed, restarts=restarts)

    def split(self, g: DemandGraph, u: VertexWeights, b=DEFAULT_B) -> Cut:
        if self.kind is SeparatorKind.EXACT:
            return exact_min_balanced_cut(g, u, b, node_budget=self.node_budget)
        return heuristic_balanced_cut(g, u, b, self)


def as_balance(b) -> Fraction:
    """Parse a balance parameter into an exact fraction in ``(0, 1/2]``.

    Accepts fractions, integers, floats (converted exactly) and ``"P/Q"``
    strings.
    """
    try:
        frac = Fraction(b)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid balance parameter {b!r}") from exc
    if not (0 < frac <= Fraction(1, 2)):
        raise InputError(f"balance parameter must lie in (0, 1/2], got {frac}")
    return frac


def _window(total: int, b: Fraction) -> tuple[int, int, int]:
    # b*U <= x <= (1-b)*U  <=>  p*U <= q*x <= (q-p)*U
    return b.numerator * total, b.denominator, (b.denominator - b.numerator) * total


def _balanced(x: int, total: int, b: Fraction) -> bool:
    lo, q, hi = _window(total, b)
    return lo <= q * x <= hi


def is_balanced(u: VertexWeights, s: Cut, b) -> bool:
    """True iff ``b*U(V) <= U(S) <= (1-b)*U(V)``, in exact arithmetic."""
    b = as_balance(b)
    if s.universe_size != len(u):
        raise InputError(f"cut over {s.universe_size} vertices, weights over {len(u)}")
    return _balanced(u.of(s.side), u.total, b)


def _check_inputs(g: DemandGraph, u: VertexWeights, b) -> Fraction:
    b = as_balance(b)
    if len(u) != g.n:
        raise InputError(f"vertex weights cover {len(u)} vertices, graph has {g.n}")
    if g.n < 2:
        raise NoBalancedCut(f"a graph with {g.n} vertices has no proper cut")
    return b


def _key(weight: int, side_mask: int, u_side: int, total: int, n: int):
    side = tuple(v for v in range(n) if side_mask >> v & 1)
    return (weight, abs(2 * u_side - total), side)


def _may_precede(side_mask: int, placed_mask: int, best_mask: int, full: int) -> bool:
    """Whether some completion of a partial side can sort before ``best_mask``.

    Sides compare as sorted tuples. Every id below the smallest unplaced
    vertex is fixed, so the first difference from the incumbent below that
    point settles the comparison up to the prefix rule.
    """
    free = full & ~placed_mask
    low = (free & -free) - 1 if free else full
    diff = (side_mask ^ best_mask) & low
    if not diff:
        return bool(free)
    d = diff & -diff
    above = ~((d << 1) - 1)
    if best_mask & d:
        # the incumbent holds d and we do not: we win only by ending before d
        return not (side_mask & above)
    return bool(best_mask & above)


def exact_min_balanced_cut(
    g: DemandGraph,
    u: VertexWeights,
    b=DEFAULT_B,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    limit: int = EXACT_LIMIT,
) -> Cut:
    """Minimum-weight ``b``-balanced cut by branch and bound.

    Vertices are branched in decreasing weight order. A branch is pruned
    when its weight lower bound (crossing weight so far, plus for every
    unplaced vertex the lighter of its attachments to the two sides)
    exceeds the incumbent, or when the placed weight can no longer land
    inside the balance window. Vertex 0 is pinned to ``S``.

    Raises:
        NoBalancedCut: if no proper balanced cut exists.
        BudgetExceeded: if more than ``node_budget`` search nodes are needed.
    """
    b = _check_inputs(g, u, b)
    n = g.n
    if n > limit:
        raise InputError(f"exact separator is limited to {limit} vertices, got {n}")
    total = u.total
    lo, q, hi = _window(total, b)
    weights = u.weights
    mat = g.matrix()
    order = sorted(range(n), key=lambda v: (-weights[v], v))
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[order[i]]

    # attach[0][v] / attach[1][v]: weight from v to placed vertices on S / T.
    attach = [[0] * n, [0] * n]
    placed = [False] * n
    full = (1 << n) - 1
    best = None  # (weight, imbalance, side tuple)
    best_mask = 0
    nodes = 0

    def bound(partial: int) -> int:
        extra = 0
        for v in range(n):
            if not placed[v]:
                a, c = attach[0][v], attach[1][v]
                extra += a if a < c else c
        return partial + extra

    def search(i: int, partial: int, mask: int, placed_mask: int, u_side: int, t_count: int) -> None:
        nonlocal best, best_mask, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"exact separator exceeded {node_budget} search nodes")
        if q * u_side > hi or q * (u_side + suffix[i]) < lo:
            return
        if best is not None:
            lb = bound(partial)
            if lb > best[0]:
                return
            if lb == best[0]:
                # final U(S) lies in [u_side, u_side + suffix[i]]
                a, z = 2 * u_side, 2 * (u_side + suffix[i])
                imb_lb = a - total if a > total else (total - z if z < total else 0)
                if imb_lb > best[1]:
                    return
                if imb_lb == best[1] and not _may_precede(mask, placed_mask, best_mask, full):
                    return
        if i == n:
            if t_count == 0:
                return
            key = _key(partial, mask, u_side, total, n)
            if best is None or key < best:
                best, best_mask = key, mask
            return
        v = order[i]
        to_s, to_t = attach[0][v], attach[1][v]
        # side 0 = S, side 1 = T; try the side v is more attached to first
        sides = (0,) if v == 0 else ((0, 1) if to_s >= to_t else (1, 0))
        row = mat[v]
        placed[v] = True
        for side in sides:
            cost = to_t if side == 0 else to_s
            acc = attach[side]
            for x in range(n):
                acc[x] += row[x]
            bit = 1 << v
            if side == 0:
                search(i + 1, partial + cost, mask | bit, placed_mask | bit, u_side + weights[v], t_count)
            else:
                search(i + 1, partial + cost, mask, placed_mask | bit, u_side, t_count + 1)
            for x in range(n):
                acc[x] -= row[x]
        placed[v] = False

    search(0, 0, 0, 0, 0, 0)
    if best is None:
        raise NoBalancedCut(f"no {b}-balanced cut exists for vertex weights {weights}")
    return Cut(best[2], n)


def _cut_of(mat: list[list[int]], side: list[int]) -> int:
    n = len(side)
    return sum(mat[x][y] for x in range(n) for y in range(x + 1, n) if side[x] != side[y])


def _greedy_fill(order, weights, total, b: Fraction, target_half: bool) -> list[int] | None:
    """Place vertices into S in ``order`` while they fit under the upper bound.

    Returns a 0/1 side vector (0 = S) or None when the result is unbalanced.
    """
    lo, q, hi = _window(total, b)
    side = [1] * len(weights)
    acc = 0
    for v in order:
        if q * (acc + weights[v]) <= hi:
            side[v] = 0
            acc += weights[v]
        if (2 * acc >= total) if target_half else (q * acc >= lo):
            break
    if not (lo <= q * acc <= hi):
        return None
    if all(s == 0 for s in side) or all(s == 1 for s in side):
        return None
    return side


def _local_search(mat, weights, total, b: Fraction, side: list[int]) -> None:
    """Steepest descent over single moves and swaps, in place."""
    n = len(side)
    lo, q, hi = _window(total, b)
    u_s = sum(weights[v] for v in range(n) if side[v] == 0)
    count = [side.count(0), side.count(1)]
    # gain[v]: reduction in cut weight if v alone switched sides
    gain = [0] * n
    for v in range(n):
        for x in range(n):
            w = mat[v][x]
            if w and x != v:
                gain[v] += w if side[x] != side[v] else -w
    while True:
        best_delta, best_move = 0, None
        for v in range(n):
            if count[side[v]] == 1 or gain[v] <= best_delta:
                continue
            new_u = u_s - weights[v] if side[v] == 0 else u_s + weights[v]
            if lo <= q * new_u <= hi:
                best_delta, best_move = gain[v], (v,)
        for v in range(n):
            if side[v] != 0:
                continue
            for x in range(n):
                if side[x] != 1:
                    continue
                delta = gain[v] + gain[x] - 2 * mat[v][x]
                if delta <= best_delta:
                    continue
                new_u = u_s - weights[v] + weights[x]
                if lo <= q * new_u <= hi:
                    best_delta, best_move = delta, (v, x)
        if best_move is None:
            return
        for v in best_move:
            old = side[v]
            u_s += weights[v] if old == 1 else -weights[v]
            count[old] -= 1
            count[1 - old] += 1
            side[v] = 1 - old
            for x in range(n):
                w = mat[v][x]
                if w and x != v:
                    # v now sits opposite to where it was
                    gain[x] += 2 * w if side[x] == old else -2 * w
            gain[v] = -gain[v]


def heuristic_balanced_cut(
    g: DemandGraph,
    u: VertexWeights,
    b=DEFAULT_B,
    strategy: SeparatorStrategy | None = None,
) -> Cut:
    """Balanced cut by randomized restarts plus local search.

    Each restart fills ``S`` from a random vertex order until it holds about
    half of ``U(V)``, falling back to a heaviest-first fill if that start is
    unbalanced, then runs steepest descent over balance-preserving single
    moves and swaps. The best cut over all restarts wins. The outcome is a
    pure function of ``(g, u, b, seed, restarts)``.

    Raises:
        NoBalancedCut: if neither fill yields a balanced start.
    """
    b = _check_inputs(g, u, b)
    strategy = strategy if strategy is not None else SeparatorStrategy.heuristic()
    n = g.n
    total = u.total
    weights = u.weights
    mat = g.matrix()
    rng = random.Random(strategy.seed)
    heaviest = sorted(range(n), key=lambda v: (-weights[v], v))
    best = None
    for _ in range(strategy.restarts):
        order = list(range(n))
        rng.shuffle(order)
        side = _greedy_fill(order, weights, total, b, target_half=True)
        if side is None:
            side = _greedy_fill(heaviest, weights, total, b, target_half=False)
        if side is None:
            raise NoBalancedCut(f"could not build a {b}-balanced start for weights {weights}")
        _local_search(mat, weights, total, b, side)
        if side[0] == 1:
            side = [1 - s for s in side]
        mask = sum(1 << v for v in range(n) if side[v] == 0)
        key = _key(_cut_of(mat, side), mask, sum(weights[v] for v in range(n) if side[v] == 0), total, n)
        if best is None or key < best:
            best = key
    return Cut(best[2], n)


def empirical_lambda(
    g: DemandGraph,
    u: VertexWeights,
    b=DEFAULT_B,
    strategy: SeparatorStrategy | None = None,
):
    """Heuristic cut weight over exact minimum balanced cut weight.

    Returns a :class:`~fractions.Fraction`; 1 when both weights are zero and
    ``math.inf`` when only the exact weight is zero.
    """
    from .graph import cut_weight

    heur = cut_weight(g, heuristic_balanced_cut(g, u, b, strategy))
    exact = cut_weight(g, exact_min_balanced_cut(g, u, b))
    if exact == 0:
        return Fraction(1) if heur == 0 else math.inf
    return Fraction(heur, exact)
