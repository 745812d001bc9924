"""Command-line interface.

Exit codes: 0 success, 2 usage, 3 unparseable input, 4 violated
precondition, 5 no balanced cut, 6 search budget exhausted, 7 failed
internal check.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import bench
from .errors import (
    BudgetExceeded,
    InputError,
    InvariantError,
    NoBalancedCut,
    ParseError,
)
from .io import dump_report, format_graph, read_edp, read_graph
from .network import gomory_hu, min_cut_st, optimal_complete_tree, reduce_edp
from .oracle import SPANNING_CAP, brute_opt_congestion, brute_opt_spanning_congestion, oracle_cap
from .routing import congestion_report, lower_bounds, route_tree
from .separator import SeparatorStrategy, as_balance

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INPUT = 4
EXIT_NO_CUT = 5
EXIT_BUDGET = 6
EXIT_INVARIANT = 7

log = logging.getLogger("treeweave")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _balance(text: str) -> Fraction:
    try:
        return as_balance(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _instance(path: str, g) -> dict:
    return {"path": path, "n": g.n, "m": len(g.edges), "total_weight": g.total_weight}


def _ratio_fields(value: int, reference: int | None) -> tuple[float | None, str | None]:
    if not reference:
        return None, None
    r = Fraction(value, reference)
    return round(float(r), 6), f"{r.numerator}/{r.denominator}"


def _emit(report: dict, out: str | None) -> None:
    text = dump_report(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_route(args) -> dict:
    g = read_graph(args.input)
    if args.separator == "exact":
        strategy = SeparatorStrategy.exact()
    else:
        strategy = SeparatorStrategy.heuristic(args.seed, args.restarts)
    tree = route_tree(g, strategy, args.b, naive=args.naive)
    tree.check(g.n)
    report = congestion_report(tree, g, with_separator_lb=True)
    opt = None
    if args.oracle:
        cap = oracle_cap()
        if g.n > cap:
            raise InputError(f"--oracle supports at most {cap} vertices, got {g.n}")
        opt = brute_opt_congestion(g, cap)[1]
        if report.lower_bound > opt or opt > report.congestion:
            raise InvariantError("lower bound <= optimum <= congestion does not hold")
        if args.separator == "exact" and not args.naive and report.congestion > 4 * opt:
            raise InvariantError(f"congestion {report.congestion} exceeds 4 x optimum {opt}")
    ratio, ratio_exact = _ratio_fields(report.congestion, opt if opt is not None else report.lower_bound)
    nodes = []
    for i, v in enumerate(tree.roles):
        node = {"id": i, "role": "internal" if v is None else "leaf"}
        if v is not None:
            node["vertex"] = v
            node["label"] = g.label(v)
        nodes.append(node)
    return {
        "command": "route",
        "instance": _instance(args.input, g),
        "algorithm": {
            "name": "naive-bisection" if args.naive else "route-tree",
            "separator": args.separator,
            "b": f"{args.b.numerator}/{args.b.denominator}",
            "restarts": args.restarts if args.separator == "heuristic" else None,
        },
        "seed": args.seed,
        "tree": {"nodes": nodes, "edges": [list(e) for e in tree.edges]},
        "per_edge_loads": [{"edge": list(e), "load": load} for e, load in report.per_edge],
        "congestion": report.congestion,
        "lb_vertex": report.lb_vertex,
        "lb_separator": report.lb_separator,
        "opt": opt,
        "ratio": ratio,
        "ratio_exact": ratio_exact,
    }


def cmd_gomory_hu(args) -> dict:
    g = read_graph(args.input)
    if g.n < 2:
        raise InputError("gomory-hu needs at least two vertices")
    tree, value = optimal_complete_tree(g)
    check = None
    if args.check:
        bad = [
            [s, t] for s in range(g.n) for t in range(s + 1, g.n)
            if tree.path_min(s, t) != min_cut_st(g, s, t)[0]
        ]
        opt = brute_opt_spanning_congestion(g)[1] if g.n <= SPANNING_CAP else None
        check = {
            "pairs_checked": g.n * (g.n - 1) // 2,
            "all_pairs": not bad,
            "mismatched_pairs": bad,
            "opt": opt,
            "optimal": None if opt is None else opt == value,
        }
        if bad or (opt is not None and opt != value):
            raise InvariantError(f"Gomory-Hu check failed: {json.dumps(check)}")
    return {
        "command": "gomory-hu",
        "instance": _instance(args.input, g),
        "algorithm": {"name": "gusfield"},
        "tree": {"edges": [{"u": u, "v": v, "flow": f} for u, v, f in gomory_hu(g).edges]},
        "congestion": value,
        "check": check,
    }


def cmd_lower_bounds(args) -> dict:
    g = read_graph(args.input)
    lb_vertex, lb_separator = lower_bounds(g)
    return {
        "command": "lower-bounds",
        "instance": _instance(args.input, g),
        "lb_vertex": lb_vertex,
        "lb_separator": lb_separator,
    }


def cmd_reduce_edp(args) -> dict:
    inst = read_edp(args.input)
    out = reduce_edp(inst)
    f_path, g_path = args.out
    Path(f_path).write_text(format_graph(out.feasibility))
    Path(g_path).write_text(format_graph(out.demand))
    name = (lambda v: inst.labels[v]) if inst.labels else str
    return {
        "command": "reduce-edp",
        "instance": {"path": args.input, "n": inst.n, "m": len(inst.edges), "pairs": len(inst.pairs)},
        "bound": out.bound,
        "feasibility": {"path": f_path, "n": out.feasibility.n, "m": len(out.feasibility.edges)},
        "demand": {"path": g_path, "n": out.demand.n, "m": len(out.demand.edges)},
        "ports": [{"vertex": v, "label": name(v), "ports": list(p)} for v, p in enumerate(out.ports)],
        "edge_ports": [{"edge": list(e), "ports": list(p)} for e, p in out.edge_ports],
        "demand_ports": [{"pair": list(d), "ports": list(p)} for d, p in out.demand_ports],
    }


def cmd_bench(args) -> dict:
    if args.count < 0:
        raise InputError("--count must be nonnegative")
    if args.n[0] < 1:
        raise InputError("--n must start at 1 or more")
    if args.weights[0] < 0:
        raise InputError("--weights must be nonnegative")
    if not 0 <= args.p <= 1:
        raise InputError("--p must lie in [0, 1]")
    if args.separator == "exact":
        strategy = SeparatorStrategy.exact()
    else:
        strategy = SeparatorStrategy.heuristic(args.seed, args.restarts)
    rows = bench.run_bench(
        args.n, args.count, args.seed, args.weights, args.p, strategy, args.b,
        compare_naive=args.compare == "naive",
    )
    summary = bench.summarize(rows, strategy)
    sys.stdout.write(bench.format_table(rows, summary))
    return {
        "command": "bench",
        "flags": {
            "n": list(args.n), "count": args.count, "seed": args.seed,
            "weights": list(args.weights), "p": args.p, "separator": args.separator,
            "b": f"{args.b.numerator}/{args.b.denominator}", "compare": args.compare,
        },
        "rows": [bench.row_record(r) for r in rows],
        "summary": summary,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeweave",
        description="Design low-congestion routing trees for demand graphs.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def separator_flags(p):
        p.add_argument("--separator", choices=("exact", "heuristic"), default="exact")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restarts", type=int, default=20)
        p.add_argument("--b", type=_balance, default=Fraction(1, 4), help="balance as P/Q")

    def report_flags(p):
        p.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true",
                       help="record wall time in the report (breaks byte-identical reruns)")

    p = sub.add_parser("route", help="build a routing tree and report its loads")
    p.add_argument("input")
    separator_flags(p)
    p.add_argument("--oracle", action="store_true", help="also compute the optimum by brute force")
    p.add_argument("--naive", action="store_true", help="unit weights at every level (baseline)")
    report_flags(p)
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("gomory-hu", help="optimal tree when any two sites may be linked")
    p.add_argument("input")
    p.add_argument("--check", action="store_true")
    report_flags(p)
    p.set_defaults(func=cmd_gomory_hu)

    p = sub.add_parser("lower-bounds", help="certified lower bounds on the optimal congestion")
    p.add_argument("input")
    report_flags(p)
    p.set_defaults(func=cmd_lower_bounds)

    p = sub.add_parser("reduce-edp", help="build the congestion instance for an edge-disjoint-paths instance")
    p.add_argument("input")
    p.add_argument("--out", nargs=2, metavar=("F_GRAPH", "G_GRAPH"), required=True)
    report_flags(p)
    p.set_defaults(func=cmd_reduce_edp)

    p = sub.add_parser("bench", help="compare weighted and naive recursion on random graphs")
    p.add_argument("--n", type=_range, default=(4, 8), metavar="LO..HI")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--weights", type=_range, default=(1, 10), metavar="LO..HI")
    p.add_argument("--p", type=float, default=0.5, help="edge probability")
    p.add_argument("--compare", choices=("naive", "none"), default="naive")
    separator_flags(p)
    p.set_defaults(seed=7)
    p.add_argument("--json", metavar="OUT", help="also write rows and summary as JSON")
    p.set_defaults(func=cmd_bench, timing=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    start = time.perf_counter()
    try:
        report = args.func(args)
    except ParseError as exc:
        log.error("parse error: %s", exc)
        return EXIT_PARSE
    except InputError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except NoBalancedCut as exc:
        log.error("no balanced cut: %s", exc)
        return EXIT_NO_CUT
    except BudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except InvariantError as exc:
        log.error("internal check failed: %s", exc)
        return EXIT_INVARIANT
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    if args.command == "bench":
        if args.json:
            Path(args.json).write_text(dump_report(report))
        return EXIT_OK
    report["wall_time_ms"] = round((time.perf_counter() - start) * 1000, 3) if args.timing else None
    _emit(report, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
