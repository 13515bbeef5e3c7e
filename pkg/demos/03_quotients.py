"""The four factor graphs of one action, side by side."""

from qgraph import HasInvertibleEdges
from qgraph.instances import c4_reflection
from qgraph.quotient import quotient, tail_construction

X, G = c4_reflection()
for variant in ("plain", "loop", "tail", "free"):
    try:
        Q = quotient(X, G, variant)
    except HasInvertibleEdges as exc:
        print(f"{variant:>5}: refused ({exc})")
        continue
    q = Q.quotient
    print(f"{variant:>5}: V={len(q.vertices)} E={len(q.edges)} T={len(q.semi_edges)} genus={Q.genus}")

# the tail quotient goes through the subdivision, whose lifted action inverts nothing
tc = tail_construction(X, G)
print("\nsubdivided:", tc.subdivided.graph)
print("quotient of the subdivision:", tc.bipartite.quotient)
print("smoothed white vertices:", tc.smoothed, "pendant white vertices:", tc.pendant)
