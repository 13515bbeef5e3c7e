"""Group actions on graphs with semi-edges, factor graphs, and exact
Riemann-Hurwitz identities relating a graph to its quotient."""

from .action import (
    ActionGroup,
    Automorphism,
    StabilizerReport,
    close_group,
    edge_stabilizers,
    enumerate_automorphisms,
    fixed_edges,
    invertible_edges,
    is_harmonic,
    orbits,
    subgroups,
    vertex_stabilizer,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    DartGraph,
    Edge,
    GraphMorphism,
    SemiEdge,
    are_isomorphic,
    build_graph,
    edges,
    genus,
    is_connected,
    loops,
    semi_edges,
    valency,
    validate_morphism,
)
from .instances import (
    FiniteGroup,
    VoltageAssignment,
    cyclic_group,
    derived_cover,
    generate_corpus,
    make_family,
    sample_actions,
    worked_examples,
)
from .quotient import QuotientResult, quotient, quotient_free, quotient_loop, quotient_plain, quotient_tail
from .riemann_hurwitz import (
    RHReport,
    check_all,
    check_corollary4,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    check_theorem5,
)
from .subdivision import SubdividedGraph, barycentric_subdivide, lift_action, smooth

__version__ = "0.1.0"
