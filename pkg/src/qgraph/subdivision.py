"""Barycentric subdivision, lifting actions to it, and smoothing.

In the subdivision ``X'`` every edge ``{x, x~}`` of ``X`` gets a white
midpoint named ``w:<min(x, x~)>``.  The half of the edge carrying dart ``x``
becomes an edge of ``X'`` made of the dart ``x`` itself (at the black end)
and a new dart ``h:<x>`` at the white end, so the edges of ``X'`` are in
bijection with the darts of ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .action import ActionGroup, Automorphism
from .errors import CarrierMismatch, HasSemiEdges, IdentifierClash, NotTwoValent, WouldCollapseLoop
from .graph import DartGraph, Edge

WHITE = "w:"
HALF = "h:"


def white_name(e: Edge) -> str:
    return WHITE + e.key


def half_name(x: str) -> str:
    return HALF + x


@dataclass(frozen=True)
class SubdividedGraph:
    graph: DartGraph
    source: DartGraph
    black: frozenset[str]
    white: frozenset[str]
    edge_origin: Mapping[str, Edge]
    dart_origin: Mapping[Edge, str]

    def colors(self) -> dict[str, str]:
        return {v: ("black" if v in self.black else "white") for v in self.graph.vertices}


def barycentric_subdivide(X: DartGraph) -> SubdividedGraph:
    if X.semi_edges:
        raise HasSemiEdges("only graphs without semi-edges can be subdivided")
    half = {x: half_name(x) for x in X.darts}
    whites = {white_name(e): e for e in X.edges}
    taken = set(X.darts) | set(X.vertices)
    clash = taken & (set(half.values()) | set(whites))
    if clash:
        raise IdentifierClash(f"subdivision names already in use: {sorted(clash)}")

    incidence = dict(X.incidence)
    reversal = {}
    for w, e in whites.items():
        for x in e.darts:
            incidence[half[x]] = w
    for x in X.darts:
        reversal[x] = half[x]
        reversal[half[x]] = x
    Xs = DartGraph([*X.darts, *half.values()], [*X.vertices, *whites], incidence, reversal)
    return SubdividedGraph(
        graph=Xs,
        source=X,
        black=frozenset(X.vertices),
        white=frozenset(whites),
        edge_origin=MappingProxyType(whites),
        dart_origin=MappingProxyType({Edge.of(x, half[x]): x for x in X.darts}),
    )


def lift_automorphism(g: Automorphism, S: SubdividedGraph) -> Automorphism:
    darts = dict(g.dart_perm)
    darts.update({half_name(x): half_name(y) for x, y in g.dart_perm.items()})
    verts = dict(g.vertex_perm)
    verts.update({w: white_name(g.image(e)) for w, e in S.edge_origin.items()})
    return Automorphism(darts, verts)


def lift_action(G: ActionGroup, S: SubdividedGraph) -> ActionGroup:
    """The colour-preserving action of G on the subdivision."""
    if G.carrier != S.source:
        raise CarrierMismatch("the group does not act on the graph that was subdivided")
    return ActionGroup(S.graph, [lift_automorphism(g, S) for g in G.elements], check=False)


def smooth(X: DartGraph, w: str) -> DartGraph:
    """Remove the 2-valent vertex ``w`` and join its two edges into one."""
    ds = X.darts_at(w)
    if len(ds) != 2:
        raise NotTwoValent(f"vertex {w!r} has valency {len(ds)}")
    a, b = ds
    ra, rb = X.reversal[a], X.reversal[b]
    if ra == a or rb == b:
        raise NotTwoValent(f"vertex {w!r} carries a semi-edge")
    if ra == b:
        raise WouldCollapseLoop(f"the two darts at {w!r} form a single loop")
    keep = [x for x in X.darts if x not in (a, b)]
    reversal = {x: X.reversal[x] for x in keep}
    reversal[ra], reversal[rb] = rb, ra
    return DartGraph(
        keep,
        [v for v in X.vertices if v != w],
        {x: X.incidence[x] for x in keep},
        reversal,
        allow_isolated=bool(X.isolated_vertices),
    )


def smooth_all(X: DartGraph, vertices: Iterable[str]) -> DartGraph:
    for w in sorted(vertices):
        X = smooth(X, w)
    return X
