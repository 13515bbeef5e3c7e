"""JSON formats.

Graph::

    {"darts": [...], "vertices": [...],
     "incidence": {dart: vertex}, "reversal": {dart: dart}}

``reversal`` must list fixed points explicitly.  A graph that legitimately
has isolated vertices (free factor graphs) lists them under ``"isolated"``.

Action: a list of ``{"dart_perm": {...}, "vertex_perm": {...}}`` generators.
Instance: ``{"graph": <graph>, "generators": <action>}``.

All dumps use sorted keys so that output can be compared byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .action import ActionGroup, Automorphism, close_group
from .errors import ParseError
from .graph import DartGraph, Edge, SemiEdge
from .quotient import QuotientResult
from .riemann_hurwitz import TERM_NAMES, THEOREMS, RHReport
from .subdivision import SubdividedGraph


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def graph_to_dict(X: DartGraph) -> dict:
    d = {
        "darts": list(X.darts),
        "vertices": list(X.vertices),
        "incidence": dict(X.incidence),
        "reversal": dict(X.reversal),
    }
    if X.isolated_vertices:
        d["isolated"] = list(X.isolated_vertices)
    return d


def _str_list(d: dict, key: str) -> list[str]:
    val = d.get(key)
    if not isinstance(val, list) or not all(isinstance(s, str) for s in val):
        raise ParseError(f"field {key!r} must be an array of strings")
    return val


def _str_map(d: dict, key: str) -> dict[str, str]:
    val = d.get(key)
    if not isinstance(val, dict):
        raise ParseError(f"field {key!r} must be an object")
    for k, v in val.items():
        if not isinstance(v, str):
            raise ParseError(f"field {key!r}: entry for {k!r} must be a string, got {v!r}")
    return val


def graph_from_dict(d: dict) -> DartGraph:
    if not isinstance(d, dict):
        raise ParseError("graph must be a JSON object")
    darts = _str_list(d, "darts")
    vertices = _str_list(d, "vertices")
    incidence = _str_map(d, "incidence")
    reversal = _str_map(d, "reversal")
    known = set(darts)
    for x, y in reversal.items():
        if x not in known:
            raise ParseError(f"reversal: {x!r} is not a declared dart")
        if y not in known:
            raise ParseError(f"reversal: dart {x!r} maps to undeclared dart {y!r}")
    for x in darts:
        if x not in reversal:
            raise ParseError(f"reversal: dart {x!r} is missing (fixed points must be explicit)")
    isolated = d.get("isolated", [])
    X = DartGraph(darts, vertices, incidence, reversal, allow_isolated=bool(isolated))
    if set(X.isolated_vertices) - set(isolated):
        raise ParseError(f"undeclared isolated vertices {sorted(set(X.isolated_vertices) - set(isolated))}")
    if "semi_edges" in d and sorted(d["semi_edges"]) != [t.dart for t in X.semi_edges]:
        raise ParseError("field 'semi_edges' disagrees with the fixed points of 'reversal'")
    return X


def automorphism_to_dict(g: Automorphism) -> dict:
    return {"dart_perm": dict(sorted(g.dart_perm.items())), "vertex_perm": dict(sorted(g.vertex_perm.items()))}


def automorphism_from_dict(d: dict) -> Automorphism:
    if not isinstance(d, dict):
        raise ParseError("generator must be an object")
    return Automorphism(_str_map(d, "dart_perm"), _str_map(d, "vertex_perm"))


def action_to_list(G: ActionGroup) -> list[dict]:
    return [automorphism_to_dict(g) for g in G.generators]


def action_from_list(X: DartGraph, gens: list, max_order: int | None = None) -> ActionGroup:
    if not isinstance(gens, list):
        raise ParseError("generators must be an array")
    kw = {} if max_order is None else {"max_order": max_order}
    return close_group(X, [automorphism_from_dict(g) for g in gens], **kw)


def instance_to_dict(X: DartGraph, G: ActionGroup | None = None, **extra) -> dict:
    d = {"graph": graph_to_dict(X)}
    if G is not None:
        d["generators"] = action_to_list(G)
    d.update(extra)
    return d


def instance_from_dict(d: dict) -> tuple[DartGraph, ActionGroup | None]:
    """Accepts a bare graph, ``{"graph", "generators"}`` or a quotient dump."""
    if not isinstance(d, dict):
        raise ParseError("top level must be a JSON object")
    if "graph" in d:
        X = graph_from_dict(d["graph"])
    elif "quotient" in d:
        X = graph_from_dict(d["quotient"])
    else:
        X = graph_from_dict(d)
    G = action_from_list(X, d["generators"]) if "generators" in d else None
    return X, G


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_instance(path: str | Path) -> tuple[DartGraph, ActionGroup | None]:
    return instance_from_dict(read_json(path))


def _cell_key(c: Edge | SemiEdge | None):
    return None if c is None else c.key


def quotient_to_dict(Q: QuotientResult) -> dict:
    g = graph_to_dict(Q.quotient)
    g["semi_edges"] = [t.dart for t in Q.quotient.semi_edges]
    orders = {"vertices": {}, "edges": {}, "semi_edges": {}}
    for c, n in Q.cell_group_orders.items():
        if isinstance(c, str):
            orders["vertices"][c] = n
        elif isinstance(c, Edge):
            orders["edges"][c.key] = n
        else:
            orders["semi_edges"][c.key] = n
    return {
        "variant": Q.variant,
        "group_order": Q.group_order,
        "genus": Q.genus,
        "quotient": g,
        "projection": {
            "vertices": dict(Q.projection_vertices),
            "edges": {c.key: _cell_key(img) for c, img in Q.projection_edges.items()},
        },
        "orders": orders,
    }


def subdivided_to_dict(S: SubdividedGraph) -> dict:
    d = graph_to_dict(S.graph)
    d["colors"] = S.colors()
    return d


def report_to_dict(r: RHReport) -> dict:
    return {
        "theorem": r.theorem,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "holds": r.holds,
        "terms": {k: r.terms[k] for k in TERM_NAMES},
        "cross_checks": dict(r.cross_checks),
    }


def report_from_dict(d: dict) -> RHReport:
    try:
        theorem = d["theorem"]
        if theorem not in THEOREMS:
            raise ParseError(f"unknown theorem {theorem!r}")
        terms = {k: int(d["terms"][k]) for k in TERM_NAMES}
        return RHReport(theorem, int(d["lhs"]), int(d["rhs"]), terms, bool(d["holds"]), dict(d.get("cross_checks", {})))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed report: {exc}") from None
