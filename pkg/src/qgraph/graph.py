"""Finite graphs with semi-edges, encoded by darts.

A graph is a quadruple ``(D, V; I, lam)``: a set of darts, a set of
vertices, an incidence map sending every dart to its initial vertex, and an
involution ``lam`` on the darts.  Two-element orbits of ``lam`` are edges,
fixed points are semi-edges (tails).  Identifiers are opaque strings and all
iteration orders are lexicographic so that output is reproducible.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import (
    DisconnectedGraph,
    EmptyVertexSet,
    IdentifierClash,
    IncidenceNotTotal,
    IsolatedVertex,
    NonInvolutoryReversal,
    UnknownVertex,
)


@dataclass(frozen=True, order=True)
class Edge:
    """An edge ``{x, lam x}``, stored as the sorted pair of its darts."""

    darts: tuple[str, str]

    @classmethod
    def of(cls, x: str, y: str) -> "Edge":
        if x == y:
            raise ValueError("an edge needs two distinct darts")
        return cls((x, y) if x < y else (y, x))

    @property
    def key(self) -> str:
        return self.darts[0]

    def __iter__(self):
        return iter(self.darts)

    def __str__(self):
        return "{%s,%s}" % self.darts


@dataclass(frozen=True, order=True)
class SemiEdge:
    dart: str

    @property
    def key(self) -> str:
        return self.dart

    def __str__(self):
        return "{%s}" % self.dart


class DartGraph:
    """Immutable validated graph with semi-edges.

    Isolated vertices are rejected unless ``allow_isolated`` is set; the only
    construction that needs them is the free factor graph, where deleting the
    tails at a vertex can leave it bare.
    """

    def __init__(
        self,
        darts: Iterable[str],
        vertices: Iterable[str],
        incidence: Mapping[str, str],
        reversal: Mapping[str, str],
        *,
        allow_isolated: bool = False,
    ):
        darts = list(darts)
        vertices = list(vertices)
        dset, vset = set(darts), set(vertices)
        if len(dset) != len(darts):
            raise IdentifierClash("duplicate dart identifiers")
        if len(vset) != len(vertices):
            raise IdentifierClash("duplicate vertex identifiers")
        if not vset:
            raise EmptyVertexSet("a graph needs at least one vertex")
        clash = dset & vset
        if clash:
            raise IdentifierClash(f"identifiers used as both dart and vertex: {sorted(clash)}")

        for x in sorted(dset):
            if x not in incidence:
                raise IncidenceNotTotal(f"dart {x!r} has no incident vertex")
            if incidence[x] not in vset:
                raise IncidenceNotTotal(f"dart {x!r} is incident to unknown vertex {incidence[x]!r}")
        extra = set(incidence) - dset
        if extra:
            raise IncidenceNotTotal(f"incidence given for unknown darts {sorted(extra)}")

        for x in sorted(dset):
            if x not in reversal:
                raise NonInvolutoryReversal(f"reversal undefined on dart {x!r}")
            y = reversal[x]
            if y not in dset:
                raise NonInvolutoryReversal(f"reversal sends {x!r} outside the dart set")
            if reversal.get(y) != x:
                raise NonInvolutoryReversal(f"reversal is not an involution at dart {x!r}")
        extra = set(reversal) - dset
        if extra:
            raise NonInvolutoryReversal(f"reversal given for unknown darts {sorted(extra)}")

        used = {incidence[x] for x in dset}
        bare = sorted(vset - used)
        if bare and not allow_isolated:
            raise IsolatedVertex(f"vertices with no darts: {bare}")

        self._darts = tuple(sorted(dset))
        self._vertices = tuple(sorted(vset))
        self._incidence = MappingProxyType({x: incidence[x] for x in self._darts})
        self._reversal = MappingProxyType({x: reversal[x] for x in self._darts})

    @property
    def darts(self) -> tuple[str, ...]:
        return self._darts

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def incidence(self) -> Mapping[str, str]:
        return self._incidence

    @property
    def reversal(self) -> Mapping[str, str]:
        return self._reversal

    def terminal(self, x: str) -> str:
        return self._incidence[self._reversal[x]]

    @cached_property
    def _star(self) -> dict[str, tuple[str, ...]]:
        star = defaultdict(list)
        for x in self._darts:
            star[self._incidence[x]].append(x)
        return {v: tuple(star.get(v, ())) for v in self._vertices}

    def darts_at(self, v: str) -> tuple[str, ...]:
        try:
            return self._star[v]
        except KeyError:
            raise UnknownVertex(v) from None

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(Edge((x, y)) for x, y in self._reversal.items() if x < y)

    @cached_property
    def semi_edges(self) -> tuple[SemiEdge, ...]:
        return tuple(SemiEdge(x) for x, y in self._reversal.items() if x == y)

    @cached_property
    def loops(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if self._incidence[e.darts[0]] == self._incidence[e.darts[1]])

    @cached_property
    def isolated_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self._vertices if not self._star[v])

    def cell_of(self, x: str) -> Edge | SemiEdge:
        """The edge or semi-edge containing dart ``x``."""
        y = self._reversal[x]
        return SemiEdge(x) if x == y else Edge.of(x, y)

    def _key(self):
        return (self._darts, self._vertices, tuple(self._incidence.items()), tuple(self._reversal.items()))

    def __eq__(self, other):
        if not isinstance(other, DartGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (
            f"DartGraph(V={len(self._vertices)}, E={len(self.edges)}, "
            f"T={len(self.semi_edges)}, D={len(self._darts)})"
        )


def build_graph(darts, vertices, incidence, reversal, *, allow_isolated=False) -> DartGraph:
    """Validate the four components and return a ``DartGraph``."""
    return DartGraph(darts, vertices, incidence, reversal, allow_isolated=allow_isolated)


def edges(X: DartGraph) -> tuple[Edge, ...]:
    return X.edges


def semi_edges(X: DartGraph) -> tuple[SemiEdge, ...]:
    return X.semi_edges


def loops(X: DartGraph) -> tuple[Edge, ...]:
    return X.loops


def valency(X: DartGraph, v: str) -> int:
    """Number of darts at ``v``: a loop counts twice, a semi-edge once."""
    return len(X.darts_at(v))


def components(X: DartGraph) -> list[list[str]]:
    """Vertex sets of connected components; semi-edges never join anything."""
    parent = {v: v for v in X.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in X.edges:
        a, b = (find(X.incidence[x]) for x in e.darts)
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps = defaultdict(list)
    for v in X.vertices:
        comps[find(v)].append(v)
    return sorted(comps.values())


def is_connected(X: DartGraph) -> bool:
    return len(components(X)) == 1


def genus(X: DartGraph) -> int:
    """``1 - |V| + |E|`` for a connected graph.

    Semi-edges are not counted; equivalently a tail counts as one edge plus
    one extra endpoint, which cancels.
    """
    if not is_connected(X):
        raise DisconnectedGraph(f"genus needs a connected graph, got {len(components(X))} components")
    return 1 - len(X.vertices) + len(X.edges)


@dataclass(frozen=True)
class GraphMorphism:
    """A pair of maps ``D -> D'`` and ``V -> V'``."""

    dart_map: Mapping[str, str]
    vertex_map: Mapping[str, str]

    def then(self, other: "GraphMorphism") -> "GraphMorphism":
        """Composite ``other o self``."""
        return GraphMorphism(
            {x: other.dart_map[y] for x, y in self.dart_map.items()},
            {v: other.vertex_map[w] for v, w in self.vertex_map.items()},
        )


@dataclass(frozen=True)
class MorphismCheck:
    """Outcome of ``validate_morphism``; falsy on failure, with a witness."""

    ok: bool
    witness: str | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_morphism(f: GraphMorphism, X: DartGraph, Y: DartGraph) -> MorphismCheck:
    """Check ``f I = I' f`` and ``f lam = lam' f`` pointwise."""
    targets = set(Y.vertices)
    for v in X.vertices:
        if f.vertex_map.get(v) not in targets:
            return MorphismCheck(False, v, "vertex image missing or not a vertex of the target")
    for x in X.darts:
        y = f.dart_map.get(x)
        if y is None or y not in Y.reversal:
            return MorphismCheck(False, x, "dart image missing or not a dart of the target")
        if f.vertex_map[X.incidence[x]] != Y.incidence[y]:
            return MorphismCheck(False, x, "incidence not preserved")
        if f.dart_map.get(X.reversal[x]) != Y.reversal[y]:
            return MorphismCheck(False, x, "reversal not preserved")
    return MorphismCheck(True)


# --- isomorphism search -----------------------------------------------------


def _signatures(X: DartGraph) -> dict[str, tuple]:
    val = {v: len(X.darts_at(v)) for v in X.vertices}
    nloops = defaultdict(int)
    ntails = defaultdict(int)
    for e in X.loops:
        nloops[X.incidence[e.darts[0]]] += 1
    for t in X.semi_edges:
        ntails[X.incidence[t.dart]] += 1
    out = {}
    for x in X.darts:
        v, w = X.incidence[x], X.terminal(x)
        y = X.reversal[x]
        out[x] = (x == y, v == w and x != y, val[v], val[w], nloops[v], ntails[v])
    return out


def _search_order(X: DartGraph) -> list[str]:
    order, seen = [], set()
    for start in sorted(X.vertices, key=lambda v: (-len(X.darts_at(v)), v)):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop(0)
            for x in X.darts_at(v):
                order.append(x)
                w = X.terminal(x)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def iter_isomorphisms(X: DartGraph, Y: DartGraph) -> Iterator[GraphMorphism]:
    """Yield every isomorphism ``X -> Y`` by backtracking over dart images."""
    if (len(X.darts), len(X.vertices), len(X.edges), len(X.semi_edges), len(X.loops)) != (
        len(Y.darts), len(Y.vertices), len(Y.edges), len(Y.semi_edges), len(Y.loops)
    ):
        return
    sx, sy = _signatures(X), _signatures(Y)
    if sorted(sx.values()) != sorted(sy.values()):
        return
    by_sig = defaultdict(list)
    for y in Y.darts:
        by_sig[sy[y]].append(y)

    order = _search_order(X)
    dmap: dict[str, str] = {}
    vmap: dict[str, str] = {}
    dused: set[str] = set()
    vused: set[str] = set()

    def place(x, y):
        pairs = [(x, y)]
        if X.reversal[x] != x:
            pairs.append((X.reversal[x], Y.reversal[y]))
        done_d, done_v = [], []
        ok = True
        for a, b in pairs:
            if b in dused or sx[a] != sy[b]:
                ok = False
                break
            va, vb = X.incidence[a], Y.incidence[b]
            if va in vmap:
                if vmap[va] != vb:
                    ok = False
                    break
            elif vb in vused:
                ok = False
                break
            else:
                vmap[va] = vb
                vused.add(vb)
                done_v.append(va)
            dmap[a] = b
            dused.add(b)
            done_d.append(a)
        if not ok:
            unplace(done_d, done_v)
            return None
        return done_d, done_v

    def unplace(done_d, done_v):
        for a in done_d:
            dused.discard(dmap.pop(a))
        for v in done_v:
            vused.discard(vmap.pop(v))

    x_bare, y_bare = list(X.isolated_vertices), list(Y.isolated_vertices)

    def rec(i):
        while i < len(order) and order[i] in dmap:
            i += 1
        if i == len(order):
            for perm in permutations(y_bare):
                vm = dict(vmap)
                vm.update(zip(x_bare, perm))
                yield GraphMorphism(dict(dmap), vm)
            return
        x = order[i]
        v = X.incidence[x]
        cands = Y.darts_at(vmap[v]) if v in vmap else by_sig[sx[x]]
        for y in cands:
            if y in dused:
                continue
            undo = place(x, y)
            if undo is not None:
                yield from rec(i + 1)
                unplace(*undo)

    yield from rec(0)


def find_isomorphism(X: DartGraph, Y: DartGraph) -> GraphMorphism | None:
    return next(iter_isomorphisms(X, Y), None)


def are_isomorphic(X: DartGraph, Y: DartGraph) -> bool:
    return find_isomorphism(X, Y) is not None


def relabel(X: DartGraph, dart_names: Mapping[str, str], vertex_names: Mapping[str, str]) -> DartGraph:
    """Rename darts and vertices; names not in the maps are kept."""
    dn = lambda x: dart_names.get(x, x)  # noqa: E731
    vn = lambda v: vertex_names.get(v, v)  # noqa: E731
    return DartGraph(
        [dn(x) for x in X.darts],
        [vn(v) for v in X.vertices],
        {dn(x): vn(X.incidence[x]) for x in X.darts},
        {dn(x): dn(X.reversal[x]) for x in X.darts},
        allow_isolated=bool(X.isolated_vertices),
    )
