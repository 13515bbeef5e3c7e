"""Finite groups of automorphisms acting on a dart graph.

Group elements are pairs of permutations (darts, vertices).  Everything is
brute force over the element list, which is the intended scale: groups of a
few thousand elements on graphs with a couple of dozen darts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Literal, Mapping

from .errors import (
    CarrierMismatch,
    InvalidGenerator,
    OrderExceeded,
    SearchBudgetExceeded,
    UnknownEdge,
    UnknownVertex,
)
from .graph import DartGraph, Edge, GraphMorphism, iter_isomorphisms, validate_morphism

DEFAULT_MAX_ORDER = 10_000
DEFAULT_MAX_DARTS = 24
FULL_SUBGROUP_LIMIT = 16


class Automorphism:
    """An automorphism given by its dart and vertex permutations.

    Equality is equality of the permutation pair, compared through the
    one-line form in lexicographic order of the domain.
    """

    __slots__ = ("dart_perm", "vertex_perm", "key", "_hash")

    def __init__(self, dart_perm: Mapping[str, str], vertex_perm: Mapping[str, str]):
        self.dart_perm = MappingProxyType(dict(dart_perm))
        self.vertex_perm = MappingProxyType(dict(vertex_perm))
        self.key = (
            tuple(self.dart_perm[x] for x in sorted(self.dart_perm)),
            tuple(self.vertex_perm[v] for v in sorted(self.vertex_perm)),
        )
        self._hash = hash(self.key)

    @classmethod
    def identity(cls, X: DartGraph) -> "Automorphism":
        return cls({x: x for x in X.darts}, {v: v for v in X.vertices})

    def __call__(self, cell: str) -> str:
        if cell in self.dart_perm:
            return self.dart_perm[cell]
        return self.vertex_perm[cell]

    def image(self, e: Edge) -> Edge:
        return Edge.of(*(self.dart_perm[x] for x in e.darts))

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        # (self * other)(x) = self(other(x))
        d, v = self.dart_perm, self.vertex_perm
        return Automorphism(
            {x: d[y] for x, y in other.dart_perm.items()},
            {u: v[w] for u, w in other.vertex_perm.items()},
        )

    def inverse(self) -> "Automorphism":
        return Automorphism(
            {y: x for x, y in self.dart_perm.items()},
            {w: u for u, w in self.vertex_perm.items()},
        )

    @property
    def is_identity(self) -> bool:
        return all(x == y for x, y in self.dart_perm.items()) and all(
            u == w for u, w in self.vertex_perm.items()
        )

    def as_morphism(self) -> GraphMorphism:
        return GraphMorphism(self.dart_perm, self.vertex_perm)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        moved = [f"{x}->{y}" for x, y in self.dart_perm.items() if x != y]
        return f"Automorphism({', '.join(moved) or 'id'})"


def check_automorphism(X: DartGraph, g: Automorphism) -> None:
    """Raise ``InvalidGenerator`` unless ``g`` is an automorphism of ``X``."""
    if set(g.dart_perm) != set(X.darts) or set(g.vertex_perm) != set(X.vertices):
        raise InvalidGenerator("permutation domain does not match the carrier", witness=None)
    if len(set(g.dart_perm.values())) != len(X.darts) or len(set(g.vertex_perm.values())) != len(X.vertices):
        raise InvalidGenerator("map is not bijective")
    chk = validate_morphism(g.as_morphism(), X, X)
    if not chk:
        raise InvalidGenerator(f"not an automorphism at {chk.witness!r}: {chk.reason}", witness=chk.witness)


def _closure(identity: Automorphism, gens: Iterable[Automorphism], max_order: int) -> set[Automorphism]:
    gens = [g for g in gens if not g.is_identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = g * h
                if k not in seen:
                    seen.add(k)
                    if len(seen) > max_order:
                        raise OrderExceeded(f"closure exceeded max_order={max_order}")
                    nxt.append(k)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class StabilizerReport:
    """Stabilizer data for one vertex or edge.

    ``elements`` holds the pointwise stabilizer.  ``setwise_order`` is only
    meaningful for edges and is ``None`` for vertices.
    """

    cell: str | Edge
    pointwise_order: int
    setwise_order: int | None
    elements: tuple[Automorphism, ...] = ()

    @property
    def invertible(self) -> bool:
        return self.setwise_order is not None and self.setwise_order == 2 * self.pointwise_order


class ActionGroup:
    """A finite group of automorphisms of ``carrier``, stored by its elements."""

    def __init__(self, carrier: DartGraph, elements: Iterable[Automorphism], *, check: bool = True):
        self.carrier = carrier
        elems = sorted(set(elements))
        ident = Automorphism.identity(carrier)
        if ident in elems:
            elems.remove(ident)
        self.elements: tuple[Automorphism, ...] = (ident, *elems)
        if check:
            for g in self.elements:
                check_automorphism(carrier, g)
            try:
                closed = _closure(ident, self.generators, len(self.elements)) == set(self.elements)
            except OrderExceeded:
                closed = False
            if not closed:
                raise InvalidGenerator("element set is not closed under composition")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._element_set

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def generators(self) -> tuple[Automorphism, ...]:
        """A generating set picked greedily in element order."""
        ident = self.elements[0]
        gens: list[Automorphism] = []
        span = {ident}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = _closure(ident, gens, len(self.elements))
                if len(span) == len(self.elements):
                    break
        return tuple(gens)

    def key(self) -> frozenset:
        return self._element_set

    def __eq__(self, other):
        if not isinstance(other, ActionGroup):
            return NotImplemented
        return self.carrier == other.carrier and self._element_set == other._element_set

    def __hash__(self):
        return hash(self._element_set)

    def __repr__(self):
        return f"ActionGroup(order={self.order}, carrier={self.carrier!r})"

    # cached tables used by every query below

    @cached_property
    def _vertex_stab(self) -> dict[str, tuple[Automorphism, ...]]:
        return {
            v: tuple(g for g in self.elements if g.vertex_perm[v] == v) for v in self.carrier.vertices
        }

    @cached_property
    def _edge_stab(self) -> dict[Edge, StabilizerReport]:
        out = {}
        for e in self.carrier.edges:
            x, y = e.darts
            point = tuple(g for g in self.elements if g.dart_perm[x] == x and g.dart_perm[y] == y)
            flips = sum(1 for g in self.elements if g.dart_perm[x] == y)
            out[e] = StabilizerReport(e, len(point), len(point) + flips, point)
        return out


def close_group(carrier: DartGraph, generators: Iterable[Automorphism], max_order: int = DEFAULT_MAX_ORDER) -> ActionGroup:
    gens = list(generators)
    for g in gens:
        check_automorphism(carrier, g)
    elems = _closure(Automorphism.identity(carrier), gens, max_order)
    return ActionGroup(carrier, elems, check=False)


def trivial_group(carrier: DartGraph) -> ActionGroup:
    return ActionGroup(carrier, [], check=False)


def _orbits(G: ActionGroup, cells, act) -> list[list]:
    seen = set()
    out = []
    for c in cells:
        if c in seen:
            continue
        orb = sorted({act(g, c) for g in G.elements})
        seen.update(orb)
        out.append(orb)
    return out


def orbits(G: ActionGroup, kind: Literal["darts", "vertices", "edges"]) -> list[list]:
    """Partition of darts, vertices or edges into G-orbits, sorted by least member."""
    X = G.carrier
    if kind == "darts":
        return _orbits(G, X.darts, lambda g, x: g.dart_perm[x])
    if kind == "vertices":
        return _orbits(G, X.vertices, lambda g, v: g.vertex_perm[v])
    if kind == "edges":
        return _orbits(G, X.edges, lambda g, e: g.image(e))
    raise ValueError(f"unknown orbit kind {kind!r}")


def vertex_stabilizer(G: ActionGroup, v: str) -> StabilizerReport:
    try:
        elems = G._vertex_stab[v]
    except KeyError:
        raise UnknownVertex(v) from None
    return StabilizerReport(v, len(elems), None, elems)


def edge_stabilizers(G: ActionGroup, e: Edge) -> StabilizerReport:
    try:
        return G._edge_stab[e]
    except KeyError:
        raise UnknownEdge(str(e)) from None


def invertible_edges(G: ActionGroup) -> tuple[Edge, ...]:
    return tuple(e for e, r in G._edge_stab.items() if r.invertible)


def fixed_edges(G: ActionGroup) -> tuple[Edge, ...]:
    return tuple(e for e, r in G._edge_stab.items() if r.pointwise_order > 1)


def dart_stabilizer_order(G: ActionGroup, x: str) -> int:
    return sum(1 for g in G.elements if g.dart_perm[x] == x)


def is_harmonic(G: ActionGroup) -> bool:
    """True iff G acts freely on darts."""
    return all(g.dart_perm[x] != x for g in G.elements[1:] for x in G.carrier.darts)


def enumerate_automorphisms(
    X: DartGraph, max_order: int = DEFAULT_MAX_ORDER, max_darts: int = DEFAULT_MAX_DARTS
) -> ActionGroup:
    """The full automorphism group, found by backtracking."""
    if len(X.darts) > max_darts:
        raise SearchBudgetExceeded(f"{len(X.darts)} darts exceeds the search guard of {max_darts}")
    elems = []
    for f in iter_isomorphisms(X, X):
        elems.append(Automorphism(f.dart_map, f.vertex_map))
        if len(elems) > max_order:
            raise SearchBudgetExceeded(f"Aut(X) has more than {max_order} elements")
    return ActionGroup(X, elems, check=False)


def subgroup(G: ActionGroup, generators: Iterable[Automorphism]) -> ActionGroup:
    gens = list(generators)
    for g in gens:
        if g not in G:
            raise CarrierMismatch(f"{g!r} is not an element of the ambient group")
    return ActionGroup(G.carrier, _closure(G.elements[0], gens, G.order), check=False)


def cyclic_subgroups(G: ActionGroup) -> list[ActionGroup]:
    seen = {}
    for g in G.elements:
        H = subgroup(G, [g])
        seen.setdefault(H.key(), H)
    return _sorted_groups(seen.values())


def subgroups(G: ActionGroup, full_limit: int = FULL_SUBGROUP_LIMIT) -> list[ActionGroup]:
    """Subgroups of G sorted by (order, elements).

    For ``|G| <= full_limit`` this is every subgroup, obtained by joining
    cyclic subgroups until nothing new appears; above the limit only the
    cyclic subgroups and G itself are returned.
    """
    found = {H.key(): H for H in cyclic_subgroups(G)}
    found[G.key()] = G
    if G.order <= full_limit:
        frontier = list(found.values())
        cyclic = list(found.values())
        while frontier:
            nxt = []
            for H in frontier:
                for C in cyclic:
                    if C.key() <= H.key():
                        continue
                    J = subgroup(G, [*H.generators, *C.generators])
                    if J.key() not in found:
                        found[J.key()] = J
                        nxt.append(J)
            frontier = nxt
    return _sorted_groups(found.values())


def _sorted_groups(groups) -> list[ActionGroup]:
    return sorted(groups, key=lambda H: (H.order, [g.key for g in H.elements]))
