"""Text formats for demand graphs and edge-disjoint-paths instances.

Graph files::

    # comment
    p <n> <m>
    c <id> <label>        (optional vertex label)
    e <u> <v> <w>         (m lines, 0-based ids, integer weight)

Instance files for the edge-disjoint-paths reduction use the same header
and labels, unweighted ``e <u> <v>`` lines, and one ``d <s> <t>`` line per
terminal pair.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from .errors import ParseError
from .graph import DemandGraph
from .network import EdpInstance

log = logging.getLogger(__name__)


def _ints(tokens, lineno, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers in {what} line", lineno) from None


def _parse(text: str, kinds: set[str]):
    header = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, ...]] = []
    demands: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, *rest = line.split()
        if tag == "c":
            parts = line.split(None, 2)
            if len(parts) == 3 and parts[1].lstrip("-").isdigit():
                labels[int(parts[1])] = parts[2]
            continue
        if tag == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(rest) != 2:
                raise ParseError("header must read 'p <n> <m>'", lineno)
            n, m = _ints(rest, lineno, "header")
            if n < 0 or m < 0:
                raise ParseError("header counts must be nonnegative", lineno)
            header = (n, m)
            continue
        if header is None:
            raise ParseError(f"'{tag}' line before the 'p' header", lineno)
        n = header[0]
        if tag == "e" and "e" in kinds:
            arity = 3 if "weighted" in kinds else 2
            if len(rest) != arity:
                raise ParseError(f"edge line needs {arity} fields", lineno)
            vals = _ints(rest, lineno, "edge")
            u, v = vals[0], vals[1]
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) has an id outside 0..{n - 1}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            if arity == 3 and vals[2] < 0:
                raise ParseError("edge weight must be nonnegative", lineno)
            edges.append(tuple(vals))
        elif tag == "d" and "d" in kinds:
            if len(rest) != 2:
                raise ParseError("demand line needs 2 fields", lineno)
            s, t = _ints(rest, lineno, "demand")
            if not (0 <= s < n and 0 <= t < n):
                raise ParseError(f"demand ({s}, {t}) has an id outside 0..{n - 1}", lineno)
            demands.append((s, t))
        else:
            raise ParseError(f"unknown line type '{tag}'", lineno)
    if header is None:
        raise ParseError("missing 'p <n> <m>' header")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    for v in labels:
        if not 0 <= v < n:
            raise ParseError(f"label for vertex {v} outside 0..{n - 1}")
    label_list = [labels.get(v, str(v)) for v in range(n)] if labels else None
    return n, edges, demands, label_list


def parse_graph(text: str) -> DemandGraph:
    n, edges, _, labels = _parse(text, {"e", "weighted"})
    seen = set()
    for u, v, _ in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            log.warning("duplicate edge %s-%s: weights are summed", *key)
        seen.add(key)
    return DemandGraph(n, edges, labels)


def read_graph(path) -> DemandGraph:
    return parse_graph(Path(path).read_text())


def format_graph(g: DemandGraph) -> str:
    lines = [f"p {g.n} {len(g.edges)}"]
    if g.labels is not None:
        lines += [f"c {v} {name}" for v, name in enumerate(g.labels)]
    lines += [f"e {u} {v} {w}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def write_graph(g: DemandGraph, path) -> None:
    Path(path).write_text(format_graph(g))


def parse_edp(text: str) -> EdpInstance:
    n, edges, demands, labels = _parse(text, {"e", "d"})
    return EdpInstance(n, tuple(edges), tuple(demands), None if labels is None else tuple(labels))


def read_edp(path) -> EdpInstance:
    return parse_edp(Path(path).read_text())


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
