"""Test instances: graph families, worked examples, derived covers, and
subgroup sampling for building a (graph, action) corpus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping

from .action import (
    DEFAULT_MAX_DARTS,
    ActionGroup,
    Automorphism,
    close_group,
    enumerate_automorphisms,
    invertible_edges,
    is_harmonic,
    orbits,
    subgroup,
    subgroups,
)
from .errors import DisconnectedCover, ParameterOutOfRange, SearchBudgetExceeded, ValidationError
from .graph import DartGraph, components, genus

MAX_N = 12
MAX_K = 6


# --- families ---------------------------------------------------------------


class _Builder:
    def __init__(self):
        self.vertices: list[str] = []
        self.incidence: dict[str, str] = {}
        self.reversal: dict[str, str] = {}

    def edge(self, name: str, u: str, v: str):
        a, b = f"{name}.0", f"{name}.1"
        self.incidence[a], self.incidence[b] = u, v
        self.reversal[a], self.reversal[b] = b, a

    def build(self) -> DartGraph:
        return DartGraph(list(self.incidence), self.vertices, self.incidence, self.reversal)


def _check(n: int, lo: int, hi: int, what: str):
    if not isinstance(n, int) or not lo <= n <= hi:
        raise ParameterOutOfRange(f"{what} must be an integer in [{lo}, {hi}], got {n!r}")


def cycle(n: int) -> DartGraph:
    """Cycle with vertices ``v0..v{n-1}`` and edge ``e{i}`` from ``v{i}`` to ``v{i+1}``.

    ``cycle(1)`` is a single loop and ``cycle(2)`` a bigon.
    """
    _check(n, 1, MAX_N, "cycle length")
    b = _Builder()
    b.vertices = [f"v{i}" for i in range(n)]
    for i in range(n):
        b.edge(f"e{i}", f"v{i}", f"v{(i + 1) % n}")
    return b.build()


def path(n: int) -> DartGraph:
    """Path on ``n`` vertices."""
    _check(n, 2, MAX_N, "path length")
    b = _Builder()
    b.vertices = [f"v{i}" for i in range(n)]
    for i in range(n - 1):
        b.edge(f"e{i}", f"v{i}", f"v{i + 1}")
    return b.build()


def complete(n: int) -> DartGraph:
    _check(n, 2, MAX_N, "complete graph order")
    b = _Builder()
    b.vertices = [f"v{i}" for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b.edge(f"e{i}_{j}", f"v{i}", f"v{j}")
    return b.build()


def bouquet(n: int) -> DartGraph:
    """One vertex with ``n`` loops."""
    _check(n, 1, MAX_N, "bouquet size")
    b = _Builder()
    b.vertices = ["v"]
    for i in range(n):
        b.edge(f"l{i}", "v", "v")
    return b.build()


def parallel(k: int) -> DartGraph:
    """``k`` parallel edges between ``u`` and ``v``."""
    _check(k, 1, MAX_K, "multiplicity")
    b = _Builder()
    b.vertices = ["u", "v"]
    for i in range(k):
        b.edge(f"p{i}", "u", "v")
    return b.build()


def theta() -> DartGraph:
    """Two vertices joined by three edges ``a``, ``b``, ``c``."""
    b = _Builder()
    b.vertices = ["u", "v"]
    for name in "abc":
        b.edge(name, "u", "v")
    return b.build()


def star_with_tail() -> DartGraph:
    """Centre ``c`` with leaves ``a``, ``b`` and the pendant edge to ``d``."""
    b = _Builder()
    b.vertices = ["a", "b", "c", "d"]
    b.edge("ca", "c", "a")
    b.edge("cb", "c", "b")
    b.edge("cd", "c", "d")
    return b.build()


FAMILIES = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "bouquet": bouquet,
    "parallel": parallel,
    "theta": theta,
    "star_with_tail": star_with_tail,
}


def make_family(name: str, n: int | None = None) -> DartGraph:
    try:
        build = FAMILIES[name]
    except KeyError:
        raise ParameterOutOfRange(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    if name in ("theta", "star_with_tail"):
        return build()
    if n is None:
        raise ParameterOutOfRange(f"family {name!r} needs a size parameter")
    return build(n)


# --- named actions ----------------------------------------------------------


def automorphism(X: DartGraph, dart_moves: Mapping[str, str], vertex_moves: Mapping[str, str]) -> Automorphism:
    """Automorphism from its non-trivial moves; everything else is fixed."""
    d = {x: dart_moves.get(x, x) for x in X.darts}
    v = {u: vertex_moves.get(u, u) for u in X.vertices}
    return Automorphism(d, v)


def rotation(n: int, k: int = 1) -> tuple[DartGraph, ActionGroup]:
    """``cycle(n)`` with the group generated by rotation through ``k`` steps."""
    X = cycle(n)
    r = automorphism(
        X,
        {f"e{i}.{s}": f"e{(i + k) % n}.{s}" for i in range(n) for s in (0, 1)},
        {f"v{i}": f"v{(i + k) % n}" for i in range(n)},
    )
    return X, close_group(X, [r])


def c4_reflection() -> tuple[DartGraph, ActionGroup]:
    """C_4 with the reflection swapping v0<->v1 and v2<->v3.

    It inverts e0 = v0v1 and e2 = v2v3 and exchanges e1 with e3.
    """
    X = cycle(4)
    s = automorphism(
        X,
        {
            "e0.0": "e0.1", "e0.1": "e0.0",
            "e2.0": "e2.1", "e2.1": "e2.0",
            "e1.0": "e3.1", "e3.1": "e1.0",
            "e1.1": "e3.0", "e3.0": "e1.1",
        },
        {"v0": "v1", "v1": "v0", "v2": "v3", "v3": "v2"},
    )
    return X, close_group(X, [s])


def inverted_edge() -> tuple[DartGraph, ActionGroup]:
    X = path(2)
    s = automorphism(X, {"e0.0": "e0.1", "e0.1": "e0.0"}, {"v0": "v1", "v1": "v0"})
    return X, close_group(X, [s])


def parallel_swap() -> tuple[DartGraph, ActionGroup]:
    X = parallel(2)
    s = automorphism(X, {"p0.0": "p1.0", "p1.0": "p0.0", "p0.1": "p1.1", "p1.1": "p0.1"}, {})
    return X, close_group(X, [s])


def star_swap() -> tuple[DartGraph, ActionGroup]:
    X = star_with_tail()
    s = automorphism(X, {"ca.0": "cb.0", "cb.0": "ca.0", "ca.1": "cb.1", "cb.1": "ca.1"}, {"a": "b", "b": "a"})
    return X, close_group(X, [s])


def worked_examples() -> dict[str, tuple[DartGraph, ActionGroup]]:
    return {
        "c4_reflection": c4_reflection(),
        "inverted_edge": inverted_edge(),
        "parallel_swap": parallel_swap(),
        "star_with_tail": star_swap(),
        "cycle_rotation": rotation(4),
    }


# --- voltage covers ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table."""

    elements: tuple[str, ...]
    table: Mapping[tuple[str, str], str]
    identity: str = field(init=False)

    def __post_init__(self):
        els = self.elements
        if len(set(els)) != len(els) or not els:
            raise ValidationError("group elements must be distinct and non-empty")
        for a in els:
            for b in els:
                if self.table.get((a, b)) not in els:
                    raise ValidationError(f"product {a}*{b} missing or outside the group")
        ids = [e for e in els if all(self.table[e, a] == a == self.table[a, e] for a in els)]
        if len(ids) != 1:
            raise ValidationError("multiplication table has no two-sided identity")
        object.__setattr__(self, "identity", ids[0])
        for a in els:
            if not any(self.table[a, b] == ids[0] for b in els):
                raise ValidationError(f"element {a!r} has no inverse")
        for a in els:
            for b in els:
                for c in els:
                    if self.table[self.table[a, b], c] != self.table[a, self.table[b, c]]:
                        raise ValidationError(f"not associative at ({a}, {b}, {c})")

    @classmethod
    def from_rows(cls, rows: Mapping[str, Mapping[str, str]]) -> "FiniteGroup":
        return cls(tuple(rows), {(a, b): c for a, row in rows.items() for b, c in row.items()})

    def mul(self, a: str, b: str) -> str:
        return self.table[a, b]

    def inverse(self, a: str) -> str:
        return next(b for b in self.elements if self.table[a, b] == self.identity)

    @property
    def order(self) -> int:
        return len(self.elements)


def cyclic_group(n: int) -> FiniteGroup:
    els = tuple(str(i) for i in range(n))
    return FiniteGroup(els, {(str(i), str(j)): str((i + j) % n) for i in range(n) for j in range(n)})


@dataclass(frozen=True)
class VoltageAssignment:
    base: DartGraph
    group: FiniteGroup
    voltage: Mapping[str, str]

    def __post_init__(self):
        if self.base.semi_edges:
            raise ValidationError("voltage base graphs may not have semi-edges")
        for x in self.base.darts:
            if self.voltage.get(x) not in self.group.elements:
                raise ValidationError(f"dart {x!r} has no voltage in the group")
            y = self.base.reversal[x]
            if self.voltage.get(y) != self.group.inverse(self.voltage[x]):
                raise ValidationError(f"voltage of {y!r} is not the inverse of the voltage of {x!r}")

    @classmethod
    def on_edges(cls, base: DartGraph, group: FiniteGroup, edge_voltage: Mapping[str, str]) -> "VoltageAssignment":
        """Assign ``edge_voltage[x]`` to dart ``x`` and its inverse to the reverse dart."""
        volt = {}
        for x, a in edge_voltage.items():
            volt[x] = a
            volt[base.reversal[x]] = group.inverse(a)
        return cls(base, group, volt)


def _lift(name: str, a: str) -> str:
    return f"{name}@{a}"


def derived_cover(va: VoltageAssignment) -> tuple[DartGraph, ActionGroup]:
    """Derived cover with darts ``x@a``; the group acts by left translation."""
    X, Gam = va.base, va.group
    darts, incidence, reversal = [], {}, {}
    for x in X.darts:
        for a in Gam.elements:
            xa = _lift(x, a)
            darts.append(xa)
            incidence[xa] = _lift(X.incidence[x], a)
            reversal[xa] = _lift(X.reversal[x], Gam.mul(a, va.voltage[x]))
    vertices = [_lift(v, a) for v in X.vertices for a in Gam.elements]
    cover = DartGraph(darts, vertices, incidence, reversal)
    n_comp = len(components(cover))
    if n_comp != 1:
        raise DisconnectedCover(f"derived cover has {n_comp} components", components=n_comp)
    gens = []
    for b in Gam.elements:
        gens.append(
            Automorphism(
                {_lift(x, a): _lift(x, Gam.mul(b, a)) for x in X.darts for a in Gam.elements},
                {_lift(v, a): _lift(v, Gam.mul(b, a)) for v in X.vertices for a in Gam.elements},
            )
        )
    return cover, close_group(cover, gens)


# --- sampling and corpus ----------------------------------------------------


def sample_actions(
    X: DartGraph, budget: int | None = None, max_order: int = 10_000, max_darts: int = DEFAULT_MAX_DARTS
) -> list[ActionGroup]:
    """Full Aut(X), its cyclic subgroups, and every subgroup when Aut(X) is small.

    Sorted by order.  When truncated to ``budget`` the full group is kept as
    the last entry.
    """
    A = enumerate_automorphisms(X, max_order=max_order, max_darts=max_darts)
    groups = subgroups(A)
    if budget is not None and len(groups) > budget:
        groups = groups[: max(budget - 1, 0)] + [A]
    return groups


def random_actions(X: DartGraph, count: int, seed: int, max_order: int = 10_000) -> list[ActionGroup]:
    """Subgroups generated by one or two random elements of Aut(X), deduplicated."""
    rng = random.Random(seed)
    A = enumerate_automorphisms(X, max_order=max_order)
    found: dict[frozenset, ActionGroup] = {}
    for _ in range(4 * count):
        if len(found) >= count:
            break
        gens = rng.sample(A.elements, k=min(rng.choice((1, 2)), A.order))
        H = subgroup(A, gens)
        found.setdefault(H.key(), H)
    return list(found.values())


@dataclass(frozen=True)
class CorpusInstance:
    family: str
    name: str
    graph: DartGraph
    group: ActionGroup

    def summary(self) -> dict:
        G = self.group
        return {
            "genus": genus(self.graph),
            "group_order": G.order,
            "vertex_orbits": len(orbits(G, "vertices")),
            "edge_orbits": len(orbits(G, "edges")),
            "dart_orbits": len(orbits(G, "darts")),
            "invertible_edges": len(invertible_edges(G)),
            "harmonic": is_harmonic(G),
        }


def corpus_graphs(max_n: int = 8) -> Iterator[tuple[str, str, DartGraph]]:
    for n in range(1, max_n + 1):
        yield "cycle", f"cycle{n}", cycle(n)
    for n in range(2, max_n + 1):
        yield "path", f"path{n}", path(n)
    for n in range(2, max_n + 1):
        yield "complete", f"complete{n}", complete(n)
    for n in range(1, max_n + 1):
        yield "bouquet", f"bouquet{n}", bouquet(n)
    for k in range(1, min(max_n, MAX_K) + 1):
        yield "parallel", f"parallel{k}", parallel(k)
    yield "theta", "theta", theta()
    yield "star_with_tail", "star_with_tail", star_with_tail()


def corpus_covers() -> Iterator[tuple[str, DartGraph, ActionGroup]]:
    for n in range(2, 7):
        va = VoltageAssignment.on_edges(bouquet(1), cyclic_group(n), {"l0.0": "1"})
        yield f"bouquet1_z{n}", *derived_cover(va)
    z2 = cyclic_group(2)
    yield "theta_z2", *derived_cover(VoltageAssignment.on_edges(theta(), z2, {"a.0": "1", "b.0": "1", "c.0": "0"}))
    z3 = cyclic_group(3)
    yield "bouquet2_z3", *derived_cover(VoltageAssignment.on_edges(bouquet(2), z3, {"l0.0": "1", "l1.0": "0"}))
    yield "k4_z2", *derived_cover(
        VoltageAssignment.on_edges(complete(4), z2, {x: ("1" if x == "e0_1.0" else "0") for x in complete(4).darts if x.endswith(".0")})
    )


def generate_corpus(
    max_n: int = 8, budget: int = 64, random_count: int = 6, seed: int = 0, max_order: int = 5_000
) -> list[CorpusInstance]:
    """Deterministic (graph, action) corpus.

    Graphs whose dart count or automorphism group exceed the search guards
    are skipped.
    """
    out = []
    for family, gname, X in corpus_graphs(max_n):
        try:
            groups = sample_actions(X, budget=budget, max_order=max_order)
            extra = random_actions(X, random_count, seed, max_order=max_order)
        except SearchBudgetExceeded:
            continue
        seen = set()
        for G in groups + extra:
            if G.key() in seen:
                continue
            seen.add(G.key())
            out.append(CorpusInstance(family, f"{gname}__{len(seen) - 1:03d}_order{G.order}", X, G))
    for name, X, G in corpus_covers():
        out.append(CorpusInstance("cover", name, X, G))
    return out


def write_corpus(root: str | Path, instances: list[CorpusInstance]) -> list[Path]:
    from .serialize import dumps, instance_to_dict

    root = Path(root)
    paths = []
    for inst in instances:
        p = root / inst.family / f"{inst.name}.json"
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(dumps(instance_to_dict(inst.graph, inst.group, expected=inst.summary())), encoding="utf-8")
        paths.append(p)
    return paths
