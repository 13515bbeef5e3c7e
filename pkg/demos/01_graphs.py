"""Graphs made of darts: edges, loops, semi-edges and genus."""

from qgraph import build_graph, genus
from qgraph.instances import bouquet, complete, cycle

for X in (cycle(4), complete(4), bouquet(3)):
    print(f"{X!r:40} edges={len(X.edges)} loops={len(X.loops)} genus={genus(X)}")

# a semi-edge is a dart that is its own reverse
lollipop = build_graph(
    ["x", "y", "t"],
    ["u", "v"],
    {"x": "u", "y": "v", "t": "v"},
    {"x": "y", "y": "x", "t": "t"},
)
print("semi-edges:", lollipop.semi_edges, "genus:", genus(lollipop))
