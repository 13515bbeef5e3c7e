"""Both sides of every applicable Riemann-Hurwitz identity, term by term."""

from qgraph.instances import worked_examples
from qgraph.riemann_hurwitz import check_all

for name, (X, G) in worked_examples().items():
    print(name)
    for r in check_all(X, G):
        t = r.terms
        print(
            f"  {r.theorem:<12} {r.lhs:>3} = {r.rhs:<3} |G|={t['group_order']} g'={t['quotient_genus']} "
            f"vdef={t['vertex_defect']} edef={t['edge_defect']} swdef={t['setwise_edge_defect']} "
            f"inv={t['inversion_term']} vert={t['vertical_count']}"
        )
