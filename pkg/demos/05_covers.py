"""Derived covers from voltages, and the unramified identity they satisfy."""

from qgraph import DisconnectedCover, genus
from qgraph.instances import VoltageAssignment, bouquet, cyclic_group, derived_cover, theta
from qgraph.quotient import quotient_plain

for n in (3, 5):
    C, G = derived_cover(VoltageAssignment.on_edges(bouquet(1), cyclic_group(n), {"l0.0": "1"}))
    print(f"bouquet(1) with voltage 1 in Z{n}: cover {C}, back down: {quotient_plain(C, G).quotient}")

base = theta()
C, G = derived_cover(VoltageAssignment.on_edges(base, cyclic_group(2), {"a.0": "1", "b.0": "1", "c.0": "0"}))
print(f"theta double cover: genus {genus(C)}; g-1 = {genus(C) - 1}, m(g'-1) = {G.order * (genus(base) - 1)}")

try:
    derived_cover(VoltageAssignment.on_edges(base, cyclic_group(2), {"a.0": "0", "b.0": "0", "c.0": "0"}))
except DisconnectedCover as exc:
    print("trivial voltages:", exc)
