"""Random-instance comparison of outside-demand weighting against the
unit-weight divide-and-conquer baseline."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from statistics import mean

from .graph import random_demand_graph
from .oracle import brute_opt_congestion, oracle_cap
from .routing import congestion, lower_bounds, route_tree
from .separator import DEFAULT_B, SeparatorKind, SeparatorStrategy

COLUMNS = (
    "index", "n", "m", "opt", "lb", "weighted", "weighted_ratio",
    "naive", "naive_ratio",
)


@dataclass
class BenchRow:
    index: int
    n: int
    m: int
    opt: int | None
    lb: int
    weighted: int
    weighted_ratio: Fraction | None
    naive: int | None = None
    naive_ratio: Fraction | None = None


def _ratio(value: int, reference: int | None) -> Fraction | None:
    if reference is None:
        return None
    if reference == 0:
        return Fraction(1) if value == 0 else None
    return Fraction(value, reference)


def run_bench(
    sizes: tuple[int, int],
    count: int,
    seed: int,
    weights: tuple[int, int] = (1, 10),
    p: float = 0.5,
    strategy: SeparatorStrategy | None = None,
    b=DEFAULT_B,
    compare_naive: bool = True,
) -> list[BenchRow]:
    """Route ``count`` seeded random graphs and compare with the optimum.

    Ratios are taken against the brute-force optimum when the graph is
    within the oracle cap and against the best lower bound otherwise.
    """
    strategy = strategy if strategy is not None else SeparatorStrategy.exact()
    rng = random.Random(seed)
    cap = oracle_cap()
    rows = []
    for index in range(count):
        n = rng.randint(*sizes)
        g = random_demand_graph(n, p, weights, rng)
        opt = brute_opt_congestion(g, cap)[1] if n <= cap else None
        lb_vertex, lb_sep = lower_bounds(g, limit=cap)
        lb = max(lb_vertex, lb_sep or 0)
        reference = opt if opt is not None else lb
        weighted = congestion(route_tree(g, strategy, b), g)
        row = BenchRow(index, n, len(g.edges), opt, lb, weighted, _ratio(weighted, reference))
        if compare_naive:
            row.naive = congestion(route_tree(g, strategy, b, naive=True), g)
            row.naive_ratio = _ratio(row.naive, reference)
        rows.append(row)
    return rows


def summarize(rows: list[BenchRow], strategy: SeparatorStrategy | None = None) -> dict:
    def stats(values):
        values = [float(v) for v in values if v is not None]
        if not values:
            return {"mean": None, "max": None}
        return {"mean": round(mean(values), 6), "max": round(max(values), 6)}

    out = {
        "instances": len(rows),
        "weighted_ratio": stats(r.weighted_ratio for r in rows),
        "naive_ratio": stats(r.naive_ratio for r in rows),
    }
    if strategy is None or strategy.kind is SeparatorKind.EXACT:
        out["bound_violations"] = sum(
            1 for r in rows if r.opt is not None and r.weighted > 4 * r.opt
        )
    return out


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return f"{float(value):.4f}"
    return str(value)


def row_record(row: BenchRow) -> dict:
    """JSON-ready row with ratios as floats."""
    record = asdict(row)
    return {c: float(v) if isinstance(v, Fraction) else v for c, v in record.items()}


def format_table(rows: list[BenchRow], summary: dict) -> str:
    lines = ["\t".join(COLUMNS)]
    for r in rows:
        record = asdict(r)
        lines.append("\t".join(_cell(record[c]) for c in COLUMNS))
    for key in ("weighted_ratio", "naive_ratio"):
        for stat, value in summary[key].items():
            lines.append(f"# {key}_{stat}\t{_cell(value)}")
    if "bound_violations" in summary:
        lines.append(f"# bound_violations\t{summary['bound_violations']}")
    return "\n".join(lines) + "\n"
