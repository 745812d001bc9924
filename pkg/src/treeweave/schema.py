"""JSON Schemas for the reports written by the command-line tool."""

_nullable_int = {"type": ["integer", "null"], "minimum": 0}
_edge = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2}
_instance = {
    "type": "object",
    "required": ["path", "n", "m"],
    "properties": {
        "path": {"type": "string"},
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "total_weight": {"type": "integer", "minimum": 0},
    },
}
_timing = {"type": ["number", "null"], "minimum": 0}

ROUTE = {
    "type": "object",
    "required": [
        "command", "instance", "algorithm", "seed", "tree", "per_edge_loads",
        "congestion", "lb_vertex", "lb_separator", "opt", "ratio", "wall_time_ms",
    ],
    "properties": {
        "command": {"const": "route"},
        "instance": _instance,
        "algorithm": {
            "type": "object",
            "required": ["name", "separator", "b"],
            "properties": {
                "name": {"enum": ["route-tree", "naive-bisection"]},
                "separator": {"enum": ["exact", "heuristic"]},
                "b": {"type": "string", "pattern": r"^\d+/\d+$"},
                "restarts": {"type": ["integer", "null"]},
            },
        },
        "seed": {"type": "integer"},
        "tree": {
            "type": "object",
            "required": ["nodes", "edges"],
            "properties": {
                "nodes": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["id", "role"],
                        "properties": {
                            "id": {"type": "integer", "minimum": 0},
                            "role": {"enum": ["leaf", "internal"]},
                            "vertex": {"type": "integer", "minimum": 0},
                            "label": {"type": "string"},
                        },
                    },
                },
                "edges": {"type": "array", "items": _edge},
            },
        },
        "per_edge_loads": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["edge", "load"],
                "properties": {"edge": _edge, "load": {"type": "integer", "minimum": 0}},
            },
        },
        "congestion": {"type": "integer", "minimum": 0},
        "lb_vertex": {"type": "integer", "minimum": 0},
        "lb_separator": _nullable_int,
        "opt": _nullable_int,
        "ratio": {"type": ["number", "null"]},
        "ratio_exact": {"type": ["string", "null"]},
        "wall_time_ms": _timing,
    },
}

GOMORY_HU = {
    "type": "object",
    "required": ["command", "instance", "algorithm", "tree", "congestion", "check", "wall_time_ms"],
    "properties": {
        "command": {"const": "gomory-hu"},
        "instance": _instance,
        "tree": {
            "type": "object",
            "required": ["edges"],
            "properties": {
                "edges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["u", "v", "flow"],
                        "properties": {
                            "u": {"type": "integer"},
                            "v": {"type": "integer"},
                            "flow": {"type": "integer", "minimum": 0},
                        },
                    },
                },
            },
        },
        "congestion": {"type": "integer", "minimum": 0},
        "check": {
            "type": ["object", "null"],
            "required": ["pairs_checked", "all_pairs", "opt", "optimal"],
        },
        "wall_time_ms": _timing,
    },
}

LOWER_BOUNDS = {
    "type": "object",
    "required": ["command", "instance", "lb_vertex", "lb_separator", "wall_time_ms"],
    "properties": {
        "command": {"const": "lower-bounds"},
        "instance": _instance,
        "lb_vertex": {"type": "integer", "minimum": 0},
        "lb_separator": _nullable_int,
        "wall_time_ms": _timing,
    },
}

REDUCE_EDP = {
    "type": "object",
    "required": ["command", "instance", "bound", "feasibility", "demand", "ports", "wall_time_ms"],
    "properties": {
        "command": {"const": "reduce-edp"},
        "bound": {"const": 1},
        "feasibility": {"type": "object", "required": ["path", "n", "m"]},
        "demand": {"type": "object", "required": ["path", "n", "m"]},
        "ports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["vertex", "ports"],
                "properties": {"ports": {"type": "array", "items": {"type": "integer"}}},
            },
        },
        "wall_time_ms": _timing,
    },
}

BENCH = {
    "type": "object",
    "required": ["command", "flags", "rows", "summary"],
    "properties": {
        "command": {"const": "bench"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "n", "m", "opt", "lb", "weighted", "weighted_ratio"],
            },
        },
        "summary": {"type": "object", "required": ["instances", "weighted_ratio", "naive_ratio"]},
    },
}

REPORT_SCHEMAS = {
    "route": ROUTE,
    "gomory-hu": GOMORY_HU,
    "lower-bounds": LOWER_BOUNDS,
    "reduce-edp": REDUCE_EDP,
    "bench": BENCH,
}
