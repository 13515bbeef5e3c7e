"""Brute-force oracles that share no code with the package.

They work on raw dictionaries: a graph is (darts, vertices, incidence,
reversal) and a group element is one dict sending every dart and vertex to
its image.
"""

from __future__ import annotations

from itertools import product

import networkx as nx
import numpy as np


def raw(X):
    return list(X.darts), list(X.vertices), dict(X.incidence), dict(X.reversal)


def raw_element(g):
    d = dict(g.dart_perm)
    d.update(g.vertex_perm)
    return d


def closure(cells, gens):
    """All products of the generators, as dicts on ``cells``."""
    cells = sorted(cells)
    ident = tuple(cells)
    idx = {c: i for i, c in enumerate(cells)}
    tg = [tuple(g[c] for c in cells) for g in gens]
    seen = {ident}
    stack = [ident]
    while stack:
        h = stack.pop()
        for g in tg:
            k = tuple(g[idx[c]] for c in h)  # g after h
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return [dict(zip(cells, t)) for t in seen]


def orbit_partition(elements, cells, act=lambda g, c: g[c]):
    seen, out = set(), []
    for c in cells:
        if c in seen:
            continue
        orb = frozenset(act(g, c) for g in elements)
        seen |= orb
        out.append(orb)
    return out


def edge_pairs(rev):
    return sorted({tuple(sorted((x, y))) for x, y in rev.items() if x != y})


def act_edge(g, e):
    return tuple(sorted((g[e[0]], g[e[1]])))


def vertex_stab_order(elements, v):
    return sum(1 for g in elements if g[v] == v)


def edge_stab_orders(elements, e):
    x, y = e
    point = sum(1 for g in elements if g[x] == x and g[y] == y)
    setw = sum(1 for g in elements if {g[x], g[y]} == {x, y})
    return point, setw


def betti_number(darts, vertices, inc, rev):
    """First Betti number ``|E| - rank(boundary)`` over the rationals."""
    es = edge_pairs(rev)
    vi = {v: i for i, v in enumerate(sorted(vertices))}
    if not es:
        return 0
    m = np.zeros((len(vertices), len(es)))
    for j, (x, y) in enumerate(es):
        m[vi[inc[x]], j] += 1
        m[vi[inc[y]], j] -= 1
    return len(es) - int(np.linalg.matrix_rank(m))


def n_components(darts, vertices, inc, rev):
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from((inc[x], inc[y]) for x, y in edge_pairs(rev))
    return nx.number_connected_components(g)


def quotient_counts(X, elements):
    """Orbit counts and the three quotient genera, computed from orbits only.

    The tail genus is computed as the genus of the quotient of the
    subdivision: vertex orbits plus edge orbits as vertices, dart orbits as
    edges.
    """
    darts, vertices, inc, rev = raw(X)
    es = edge_pairs(rev)
    nv = len(orbit_partition(elements, vertices))
    eorb = orbit_partition(elements, es, act_edge)
    nd = len(orbit_partition(elements, darts))
    ninv = sum(1 for orb in eorb if any(g[e[0]] == e[1] for e in orb for g in elements))
    return {
        "vertex_orbits": nv,
        "edge_orbits": len(eorb),
        "dart_orbits": nd,
        "invertible_orbits": ninv,
        "g_loop": 1 - nv + len(eorb),
        "g_tail": 1 - (nv + len(eorb)) + nd,
    }


def rh_oracle(X, elements):
    """Every right-hand side, assembled from brute-force stabilizer counts."""
    darts, vertices, inc, rev = raw(X)
    n = len(elements)
    es = edge_pairs(rev)
    qc = quotient_counts(X, elements)
    vd = sum(vertex_stab_order(elements, v) - 1 for v in vertices)
    ed = swd = inv_term = inv_count = 0
    for e in es:
        p, s = edge_stab_orders(elements, e)
        ed += p - 1
        swd += s - 1
        if s == 2 * p:
            inv_term += p
            inv_count += 1
    g = betti_number(darts, vertices, inc, rev)
    out = {
        "lhs": g - 1,
        "T2_tail": n * (qc["g_tail"] - 1) + vd - ed + inv_term,
        "T3_free": n * (qc["g_tail"] - 1) + vd - ed + inv_term,
        "T5_loop": n * (qc["g_loop"] - 1) + vd - swd,
        "terms": dict(vertex_defect=vd, edge_defect=ed, setwise_edge_defect=swd, inversion_term=inv_term, vertical_count=inv_count),
    }
    if inv_count == 0:
        out["T1_plain"] = n * (qc["g_loop"] - 1) + vd - ed
    if all(g[x] != x for g in elements for x in darts if any(g[c] != c for c in g)):
        out["C4_harmonic"] = n * (qc["g_tail"] - 1) + vd + inv_count
    return out


def to_networkx(X):
    darts, vertices, inc, rev = raw(X)
    m = nx.MultiGraph()
    for v in vertices:
        m.add_node(v, tails=sum(1 for x in darts if rev[x] == x and inc[x] == v))
    for x, y in edge_pairs(rev):
        m.add_edge(inc[x], inc[y])
    return m


def nx_isomorphic(X, Y):
    return nx.is_isomorphic(to_networkx(X), to_networkx(Y), node_match=lambda a, b: a["tails"] == b["tails"])


def brute_automorphism_count(X):
    """|Aut(X)| by trying every vertex permutation and every compatible dart map.

    Only usable for tiny graphs.
    """
    from itertools import permutations

    darts, vertices, inc, rev = raw(X)
    count = 0
    for vp in permutations(vertices):
        vm = dict(zip(vertices, vp))
        # darts at each vertex must map onto darts at the image vertex
        choices = []
        for v in vertices:
            src = [x for x in darts if inc[x] == v]
            dst = [x for x in darts if inc[x] == vm[v]]
            if len(src) != len(dst):
                break
            choices.append([dict(zip(src, p)) for p in permutations(dst)])
        else:
            for combo in product(*choices):
                dm = {}
                for part in combo:
                    dm.update(part)
                if all(dm[rev[x]] == rev[dm[x]] for x in darts):
                    count += 1
    return count
