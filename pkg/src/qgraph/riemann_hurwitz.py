"""Exact checks of the Riemann-Hurwitz identities for graph actions.

Every check returns an ``RHReport`` holding ``g - 1`` for the graph, the
right-hand side, and the integer terms it was assembled from.  The
identities are theorems, so a failing report is a bug; by default it is
raised as ``IdentityViolation`` together with the serialized instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .action import (
    ActionGroup,
    edge_stabilizers,
    invertible_edges,
    is_harmonic,
    vertex_stabilizer,
)
from .errors import DisconnectedGraph, HasInvertibleEdges, HasSemiEdges, IdentityViolation, NotHarmonic
from .graph import DartGraph, genus, is_connected
from .quotient import quotient_free, quotient_loop, quotient_plain, tail_construction

THEOREMS = ("T1_plain", "T2_tail", "T3_free", "C4_harmonic", "T5_loop")
TERM_NAMES = (
    "group_order",
    "quotient_genus",
    "vertex_defect",
    "edge_defect",
    "setwise_edge_defect",
    "inversion_term",
    "vertical_count",
)


def formula(theorem: str, t: Mapping[str, int]) -> int:
    """Right-hand side of ``theorem`` evaluated on the term breakdown ``t``."""
    base = t["group_order"] * (t["quotient_genus"] - 1) + t["vertex_defect"]
    if theorem == "T1_plain":
        return base - t["edge_defect"]
    if theorem in ("T2_tail", "T3_free"):
        return base - t["edge_defect"] + t["inversion_term"]
    if theorem == "C4_harmonic":
        return base + t["vertical_count"]
    if theorem == "T5_loop":
        return base - t["setwise_edge_defect"]
    raise ValueError(f"unknown theorem {theorem!r}")


@dataclass(frozen=True)
class RHReport:
    theorem: str
    lhs: int
    rhs: int
    terms: Mapping[str, int]
    holds: bool
    cross_checks: Mapping[str, bool] = field(default_factory=dict)

    @classmethod
    def make(cls, theorem, lhs, terms, cross_checks=None) -> "RHReport":
        terms = {k: int(terms[k]) for k in TERM_NAMES}
        rhs = formula(theorem, terms)
        return cls(theorem, lhs, rhs, MappingProxyType(terms), lhs == rhs, MappingProxyType(dict(cross_checks or {})))

    def consistent(self) -> bool:
        """Stored rhs and verdict agree with the stored terms."""
        return self.rhs == formula(self.theorem, self.terms) and self.holds == (self.lhs == self.rhs)

    @property
    def ok(self) -> bool:
        return self.holds and self.consistent() and all(self.cross_checks.values())


def _require_graph(X: DartGraph) -> None:
    if X.semi_edges:
        raise HasSemiEdges("the identities are stated for graphs without semi-edges")
    if not is_connected(X):
        raise DisconnectedGraph("the identities need a connected graph")


def stabilizer_terms(G: ActionGroup) -> dict[str, int]:
    """All stabilizer sums that appear in any of the identities."""
    X = G.carrier
    vd = sum(vertex_stabilizer(G, v).pointwise_order - 1 for v in X.vertices)
    ed = swd = 0
    for e in X.edges:
        r = edge_stabilizers(G, e)
        ed += r.pointwise_order - 1
        swd += r.setwise_order - 1
    inv = invertible_edges(G)
    inv_term = sum(edge_stabilizers(G, e).pointwise_order for e in inv)
    return {
        "group_order": G.order,
        "vertex_defect": vd,
        "edge_defect": ed,
        "setwise_edge_defect": swd,
        "inversion_term": inv_term,
        "vertical_count": len(inv),
    }


def _finish(report: RHReport, X: DartGraph, G: ActionGroup, strict: bool) -> RHReport:
    if strict and not report.ok:
        from .serialize import instance_to_dict

        failed = [k for k, v in report.cross_checks.items() if not v]
        raise IdentityViolation(
            f"{report.theorem} failed: lhs={report.lhs} rhs={report.rhs} failed checks={failed}",
            report=report,
            instance=instance_to_dict(X, G),
        )
    return report


def check_theorem1(X: DartGraph, G: ActionGroup, strict: bool = True) -> RHReport:
    _require_graph(X)
    if invertible_edges(G):
        raise HasInvertibleEdges("the plain identity needs an action without invertible edges", edge=invertible_edges(G)[0])
    Q = quotient_plain(X, G)
    terms = stabilizer_terms(G)
    terms["quotient_genus"] = Q.genus
    n = G.order
    vsum = sum(n // Q.cell_group_orders[v] for v in Q.quotient.vertices)
    esum = sum(n // Q.cell_group_orders[e] for e in Q.quotient.edges)
    checks = {
        "vertex_volume": vsum == len(X.vertices),
        "edge_volume": esum == len(X.edges),
        "fibres_transitive": all(
            Q.fiber_sizes()[c] * Q.cell_group_orders[c] == n for c in Q.fiber_sizes()
        ),
    }
    return _finish(RHReport.make("T1_plain", genus(X) - 1, terms, checks), X, G, strict)


def check_theorem2(X: DartGraph, G: ActionGroup, strict: bool = True) -> RHReport:
    """Tail variant, checked together with the subdivision steps of its proof."""
    _require_graph(X)
    tc = tail_construction(X, G)
    terms = stabilizer_terms(G)
    g_tail = tc.result.genus
    terms["quotient_genus"] = g_tail

    # plain identity on the subdivision, then its vertex and edge sums split back onto X
    sub = check_theorem1(tc.subdivided.graph, tc.lifted, strict=False)
    sub_terms = sub.terms
    checks = {
        "subdivision_identity": sub.ok,
        "subdivision_genus": genus(tc.subdivided.graph) == genus(X),
        "smoothing_keeps_genus": tc.bipartite.genus == g_tail,
        "white_vertex_sum": sub_terms["vertex_defect"] == terms["vertex_defect"] + terms["setwise_edge_defect"],
        "half_edge_sum": sub_terms["edge_defect"] == 2 * terms["edge_defect"],
        "lift_has_no_inversions": not invertible_edges(tc.lifted),
    }
    return _finish(RHReport.make("T2_tail", genus(X) - 1, terms, checks), X, G, strict)


def check_theorem3(X: DartGraph, G: ActionGroup, strict: bool = True) -> RHReport:
    _require_graph(X)
    F = quotient_free(X, G)
    terms = stabilizer_terms(G)
    terms["quotient_genus"] = F.genus
    return _finish(RHReport.make("T3_free", genus(X) - 1, terms), X, G, strict)


def check_corollary4(X: DartGraph, G: ActionGroup, strict: bool = True) -> RHReport:
    _require_graph(X)
    if not is_harmonic(G):
        raise NotHarmonic("the action fixes some dart")
    F = quotient_free(X, G)
    terms = stabilizer_terms(G)
    terms["quotient_genus"] = F.genus
    checks = {
        "trivial_edge_stabilizers": terms["edge_defect"] == 0,
        "agrees_with_T3": formula("C4_harmonic", terms) == formula("T3_free", terms),
    }
    return _finish(RHReport.make("C4_harmonic", genus(X) - 1, terms, checks), X, G, strict)


def check_theorem5(X: DartGraph, G: ActionGroup, strict: bool = True) -> RHReport:
    """Loop variant, with the intermediate equalities linking it to the tail variant."""
    _require_graph(X)
    L = quotient_loop(X, G)
    T = tail_construction(X, G).result
    terms = stabilizer_terms(G)
    g_loop, g_tail = L.genus, T.genus
    terms["quotient_genus"] = g_loop
    n = G.order
    inv = invertible_edges(G)
    tails = len(T.quotient.semi_edges)
    setwise_inv = sum(edge_stabilizers(G, e).setwise_order for e in inv)
    pointwise_inv = terms["inversion_term"]

    tail_terms = dict(terms, quotient_genus=g_tail)
    checks = {
        "loop_equals_tail_plus_tails": g_loop == g_tail + tails,
        "tail_count": tails * n == setwise_inv,
        "tail_to_loop_shift": n * (g_tail - 1) == n * (g_loop - 1) - 2 * pointwise_inv,
        "setwise_rewrite": -terms["edge_defect"] == -terms["setwise_edge_defect"] + pointwise_inv,
        "agrees_with_T2": formula("T5_loop", terms) == formula("T2_tail", tail_terms),
    }
    return _finish(RHReport.make("T5_loop", genus(X) - 1, terms, checks), X, G, strict)


def check_all(X: DartGraph, G: ActionGroup, strict: bool = True) -> list[RHReport]:
    """Every applicable check; T1 is skipped with invertible edges, C4 without harmonicity."""
    _require_graph(X)
    reports = []
    if not invertible_edges(G):
        reports.append(check_theorem1(X, G, strict))
    reports.append(check_theorem2(X, G, strict))
    reports.append(check_theorem3(X, G, strict))
    if is_harmonic(G):
        reports.append(check_corollary4(X, G, strict))
    reports.append(check_theorem5(X, G, strict))

    shared = [k for k in TERM_NAMES if k != "quotient_genus"]
    first = reports[0].terms
    by = {r.theorem: r for r in reports}
    agree = (
        all(r.terms[k] == first[k] for r in reports for k in shared)
        and by["T2_tail"].terms["quotient_genus"] == by["T3_free"].terms["quotient_genus"]
        and by["T2_tail"].rhs == by["T3_free"].rhs == by["T5_loop"].rhs
    )
    if strict and not agree:
        from .serialize import instance_to_dict

        raise IdentityViolation("reports disagree on shared terms", report=reports, instance=instance_to_dict(X, G))
    return reports
