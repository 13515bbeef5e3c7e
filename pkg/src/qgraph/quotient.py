"""Factor graphs X/G.

Four variants are built here:

* ``plain``: only for actions without invertible edges; cells are orbits.
* ``loop``: an invertible-edge orbit becomes a loop at its single endpoint.
* ``tail``: built by subdividing, taking the plain quotient of the lifted
  action and smoothing 2-valent white vertices.  Invertible-edge orbits end
  up as semi-edges.
* ``free``: the tail variant with every semi-edge deleted.

Quotient cells are named ``o:<least member of the orbit>``.  Every result
records the projection of vertices and edges and, for every quotient cell,
the order of the stabilizer of a preimage (graph-of-groups decoration).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Literal, Mapping, Union

from .action import (
    ActionGroup,
    Automorphism,
    dart_stabilizer_order,
    edge_stabilizers,
    invertible_edges,
    orbits,
    vertex_stabilizer,
)
from .errors import CarrierMismatch, HasInvertibleEdges, HasSemiEdges
from .graph import DartGraph, Edge, SemiEdge, genus
from .subdivision import SubdividedGraph, barycentric_subdivide, lift_action, smooth_all

ORBIT = "o:"
VARIANTS = ("plain", "loop", "tail", "free")

Variant = Literal["plain", "loop", "tail", "free"]
Cell = Union[str, Edge, SemiEdge]


@dataclass(frozen=True)
class QuotientResult:
    quotient: DartGraph
    variant: str
    source: DartGraph
    group_order: int
    projection_vertices: Mapping[str, str]
    # edges and semi-edges of the source; None marks a dropped image (free variant)
    projection_edges: Mapping[Union[Edge, SemiEdge], Union[Edge, SemiEdge, None]]
    cell_group_orders: Mapping[Cell, int]

    @property
    def genus(self) -> int:
        return genus(self.quotient)

    def fiber_sizes(self) -> dict[Cell, int]:
        """Number of source cells over each quotient cell."""
        sizes = Counter(self.projection_vertices.values())
        sizes.update(c for c in self.projection_edges.values() if c is not None)
        return dict(sizes)

    def __repr__(self):
        return f"QuotientResult({self.variant}, {self.quotient!r}, |G|={self.group_order})"


def _orbit_names(G: ActionGroup) -> tuple[dict[str, str], dict[str, str]]:
    dname, vname = {}, {}
    for orb in orbits(G, "darts"):
        for x in orb:
            dname[x] = ORBIT + orb[0]
    for orb in orbits(G, "vertices"):
        for v in orb:
            vname[v] = ORBIT + orb[0]
    return dname, vname


def _dart_quotient(G: ActionGroup):
    """Darts are dart orbits, reversal ``Gx -> G(lam x)``, incidence ``Gx -> G(Ix)``."""
    X = G.carrier
    dname, vname = _orbit_names(G)
    incidence = {dname[x]: vname[X.incidence[x]] for x in X.darts}
    reversal = {dname[x]: dname[X.reversal[x]] for x in X.darts}
    Q = DartGraph(
        sorted(set(dname.values())),
        sorted(set(vname.values())),
        incidence,
        reversal,
        allow_isolated=bool(X.isolated_vertices),
    )
    return Q, dname, vname


def _vertex_orders(G: ActionGroup, vname) -> dict[str, int]:
    return {qv: vertex_stabilizer(G, qv[len(ORBIT):]).pointwise_order for qv in set(vname.values())}


def quotient_plain(X: DartGraph, G: ActionGroup) -> QuotientResult:
    if G.carrier != X:
        raise CarrierMismatch("group does not act on this graph")
    inv = invertible_edges(G)
    if inv:
        raise HasInvertibleEdges(f"edge {inv[0]} is inverted by the group", edge=inv[0])
    Q, dname, vname = _dart_quotient(G)
    proj = {}
    orders: dict[Cell, int] = _vertex_orders(G, vname)
    for e in X.edges:
        img = Q.cell_of(dname[e.key])
        proj[e] = img
        orders.setdefault(img, edge_stabilizers(G, e).pointwise_order)
    for t in X.semi_edges:
        img = Q.cell_of(dname[t.dart])
        proj[t] = img
        orders.setdefault(img, dart_stabilizer_order(G, t.dart))
    return QuotientResult(Q, "plain", X, G.order, MappingProxyType(vname), MappingProxyType(proj), MappingProxyType(orders))


def _fresh(name: str, taken: set[str]) -> str:
    cand = name + "*"
    while cand in taken:
        cand += "*"
    return cand


def quotient_loop(X: DartGraph, G: ActionGroup) -> QuotientResult:
    """Factor graph in which each invertible-edge orbit is a loop.

    Both darts of an invertible edge fall into one dart orbit, so the loop is
    realised with two fresh darts: ``o:<m>`` and ``o:<m>*``.
    """
    if G.carrier != X:
        raise CarrierMismatch("group does not act on this graph")
    Q, dname, vname = _dart_quotient(G)
    incidence = dict(Q.incidence)
    reversal = dict(Q.reversal)
    taken = set(Q.darts) | set(Q.vertices)
    partner = {}
    for e in invertible_edges(G):
        m = dname[e.key]
        if m in partner:
            continue
        m2 = _fresh(m, taken)
        taken.add(m2)
        partner[m] = m2
        incidence[m2] = incidence[m]
        reversal[m], reversal[m2] = m2, m
    L = DartGraph(sorted(incidence), Q.vertices, incidence, reversal, allow_isolated=bool(Q.isolated_vertices))

    proj = {}
    orders: dict[Cell, int] = _vertex_orders(G, vname)
    for e in X.edges:
        img = L.cell_of(dname[e.key])
        proj[e] = img
        orders.setdefault(img, edge_stabilizers(G, e).setwise_order)
    for t in X.semi_edges:
        img = L.cell_of(dname[t.dart])
        proj[t] = img
        orders.setdefault(img, dart_stabilizer_order(G, t.dart))
    return QuotientResult(L, "loop", X, G.order, MappingProxyType(vname), MappingProxyType(proj), MappingProxyType(orders))


@dataclass(frozen=True)
class TailConstruction:
    """Intermediate objects of the tail-variant construction."""

    subdivided: SubdividedGraph
    lifted: ActionGroup
    bipartite: QuotientResult
    smoothed: tuple[str, ...]
    pendant: tuple[str, ...]
    result: QuotientResult


def tail_construction(X: DartGraph, G: ActionGroup) -> TailConstruction:
    if G.carrier != X:
        raise CarrierMismatch("group does not act on this graph")
    if X.semi_edges:
        raise HasSemiEdges("the tail variant is defined for graphs without semi-edges")
    S = barycentric_subdivide(X)
    L = lift_action(G, S)
    B = quotient_plain(S.graph, L)
    Y = B.quotient
    whites = sorted({B.projection_vertices[w] for w in S.white})
    two = tuple(w for w in whites if len(Y.darts_at(w)) == 2)
    one = tuple(w for w in whites if len(Y.darts_at(w)) == 1)
    Y = smooth_all(Y, two)

    # a white vertex of valency one and its edge collapse to a tail at the black end
    drop = {Y.darts_at(w)[0] for w in one}
    keep = [x for x in Y.darts if x not in drop]
    reversal = {x: (x if Y.reversal[x] in drop else Y.reversal[x]) for x in keep}
    T = DartGraph(
        keep,
        [v for v in Y.vertices if v not in one],
        {x: Y.incidence[x] for x in keep},
        reversal,
        allow_isolated=bool(X.isolated_vertices),
    )

    vproj = {v: B.projection_vertices[v] for v in X.vertices}
    orders: dict[Cell, int] = {qv: B.cell_group_orders[qv] for qv in set(vproj.values())}
    proj = {}
    for e in X.edges:
        for x in e.darts:
            black_half = B.projection_edges[Edge.of(x, S.graph.reversal[x])]
            qx = next(d for d in black_half.darts if d in T.reversal)
            img = T.cell_of(qx)
            if isinstance(img, SemiEdge):
                # order of the white vertex = setwise stabilizer of e
                white = B.projection_vertices[S.graph.incidence[S.graph.reversal[x]]]
                orders.setdefault(img, B.cell_group_orders[white])
            else:
                orders.setdefault(img, B.cell_group_orders[black_half])
            proj.setdefault(e, img)
    res = QuotientResult(T, "tail", X, G.order, MappingProxyType(vproj), MappingProxyType(proj), MappingProxyType(orders))
    return TailConstruction(S, L, B, two, one, res)


def quotient_tail(X: DartGraph, G: ActionGroup) -> QuotientResult:
    return tail_construction(X, G).result


def quotient_free(X: DartGraph, G: ActionGroup) -> QuotientResult:
    tail = quotient_tail(X, G)
    T = tail.quotient
    keep = [x for x in T.darts if T.reversal[x] != x]
    F = DartGraph(
        keep,
        T.vertices,
        {x: T.incidence[x] for x in keep},
        {x: T.reversal[x] for x in keep},
        allow_isolated=True,
    )
    proj = {e: (None if isinstance(img, SemiEdge) else img) for e, img in tail.projection_edges.items()}
    orders = {c: n for c, n in tail.cell_group_orders.items() if not isinstance(c, SemiEdge)}
    return QuotientResult(F, "free", X, G.order, tail.projection_vertices, MappingProxyType(proj), MappingProxyType(orders))


def quotient(X: DartGraph, G: ActionGroup, variant: Variant = "plain") -> QuotientResult:
    builders = {"plain": quotient_plain, "loop": quotient_loop, "tail": quotient_tail, "free": quotient_free}
    try:
        build = builders[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}") from None
    return build(X, G)


def induced_action(G: ActionGroup, H: ActionGroup, QH: QuotientResult) -> ActionGroup:
    """Action of G on the plain quotient X/H, for H normal in G."""
    if QH.variant != "plain" or H.carrier != G.carrier:
        raise CarrierMismatch("need the plain quotient of the carrier by H")
    hs = H.key()
    for g in G.generators:
        gi = g.inverse()
        if any(g * h * gi not in hs for h in H.generators):
            raise ValueError("H is not normal in G")
    dname, vname = _orbit_names(H)
    Q = QH.quotient
    images = []
    for g in G.elements:
        images.append(
            Automorphism(
                {qx: dname[g.dart_perm[qx[len(ORBIT):]]] for qx in Q.darts},
                {qv: vname[g.vertex_perm[qv[len(ORBIT):]]] for qv in Q.vertices},
            )
        )
    return ActionGroup(Q, images)
