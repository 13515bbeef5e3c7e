"""Automorphism groups, orbits and the two kinds of edge stabilizer."""

from qgraph.action import edge_stabilizers, enumerate_automorphisms, fixed_edges, invertible_edges, is_harmonic, orbits, subgroups
from qgraph.instances import c4_reflection, cycle, star_swap

A = enumerate_automorphisms(cycle(4))
print("|Aut(C4)| =", A.order)
print("subgroup orders:", [H.order for H in subgroups(A)])

X, G = c4_reflection()
print("\nreflection of C4 through two edge midpoints")
print("  vertex orbits:", orbits(G, "vertices"))
for e in X.edges:
    r = edge_stabilizers(G, e)
    print(f"  {e}: pointwise {r.pointwise_order}, setwise {r.setwise_order}")
print("  invertible:", invertible_edges(G), "harmonic:", is_harmonic(G))

X, G = star_swap()
print("\nstar with a swapped pair of leaves")
print("  fixed edges:", fixed_edges(G), "harmonic:", is_harmonic(G))
