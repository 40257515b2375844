"""Exact path homology and directed flag complex homology of digraphs."""

from .dfc_homology import (
    FlagComplex,
    SimplicialBetti,
    dfc_betti,
    directed_flag_complex,
    graph_simplicial_betti,
    theorem2_prediction,
)
from .exact_linalg import FieldSpec, SparseMatrix, multiply, null_space, rank
from .filtration import BettiCurve, betti_curve, magnitude_thresholds, subgraph_at_threshold
from .graph_core import (
    Digraph,
    MlpSpec,
    UndirectedGraph,
    WeightedDigraph,
    connected_components,
    from_edge_list,
    longest_path_length,
    mlp_digraph,
    underlying_undirected,
)
from .path_homology import (
    HomologySummary,
    PathChain,
    allowed_paths,
    boundary_blocks,
    explicit_cycle_basis,
    omega_basis,
    path_betti,
    theorem1_prediction,
)

__version__ = "0.1.0"
