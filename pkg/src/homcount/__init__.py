"""Exact homomorphism counting for constant-size patterns in bounded-degeneracy graphs.

Patterns whose longest induced cycle has length at most five get a
near-linear counting engine built on width-1 DAG tree decompositions of
their acyclic orientations; longer-cycle patterns get a hardness
certificate and a triangle-counting reduction through a constant-degeneracy
gadget.
"""

__version__ = "0.1.0"

from .graph import (
    EdgeListError,
    Graph,
    OrientedGraph,
    count_triangles_direct,
    degeneracy_order,
    delete_vertices,
    orient,
    parse_edge_list,
    write_edge_list,
)
from .pattern import (
    DagTreeDecomposition,
    DisconnectedPatternError,
    HardnessCertificate,
    Pattern,
    PatternSizeError,
    UniqueReachabilityGraph,
    Width1Failure,
    automorphism_count,
    build_width1_decomposition,
    canonical_longest_cycle,
    enumerate_acyclic_orientations,
    hardness_certificate,
    is_intersection_cover,
    longest_induced_cycle,
    reachable,
    sources,
    unique_reachability_graph,
    validate_decomposition,
)
from .counting import (
    CountConsistencyError,
    HardPatternError,
    HomTable,
    HostSizeError,
    InvalidDecompositionError,
    VertexPartition,
    count_homs,
    count_homs_brute,
    count_homs_decomposed,
    count_partitioned_homs,
    count_partitioned_matches,
    decomposition_tables,
    enumerate_reachable_homs,
)
from .reduction import (
    ReductionInstance,
    build_gadget,
    count_triangles_via_reduction,
    verify_gadget_degeneracy,
)
from .hostgen import bounded_degeneracy_host

__all__ = [
    "EdgeListError",
    "Graph",
    "OrientedGraph",
    "count_triangles_direct",
    "degeneracy_order",
    "delete_vertices",
    "orient",
    "parse_edge_list",
    "write_edge_list",
    "DagTreeDecomposition",
    "DisconnectedPatternError",
    "HardnessCertificate",
    "Pattern",
    "PatternSizeError",
    "UniqueReachabilityGraph",
    "Width1Failure",
    "automorphism_count",
    "build_width1_decomposition",
    "canonical_longest_cycle",
    "enumerate_acyclic_orientations",
    "hardness_certificate",
    "is_intersection_cover",
    "longest_induced_cycle",
    "reachable",
    "sources",
    "unique_reachability_graph",
    "validate_decomposition",
    "CountConsistencyError",
    "HardPatternError",
    "HomTable",
    "HostSizeError",
    "InvalidDecompositionError",
    "VertexPartition",
    "count_homs",
    "count_homs_brute",
    "count_homs_decomposed",
    "count_partitioned_homs",
    "count_partitioned_matches",
    "decomposition_tables",
    "enumerate_reachable_homs",
    "HomTable",
    "ReductionInstance",
    "build_gadget",
    "count_triangles_via_reduction",
    "verify_gadget_degeneracy",
    "bounded_degeneracy_host",
]
