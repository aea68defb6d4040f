"""contractvc: exact solver for lowering a graph's minimum vertex cover by
contracting few edges, with brute-force oracles and hardness-construction
generators for testing."""

from .digraph import (
    Condensation,
    Digraph,
    DigraphMaxcutInstance,
    condense,
    dp_digraph_maxcut,
    prefix_cut_check,
)
from .exact import (
    CoverResult,
    OctResult,
    bc_at_most_bruteforce,
    matching_saturating,
    min_vc_given_oct,
    min_vertex_cover,
    oct_at_most,
    vc_at_most,
)
from .graph import (
    ContractionMap,
    Graph,
    build_graph,
    connected_components,
    contract_edges,
    is_independent_set,
    is_vertex_cover,
    neighborhood,
    rank_edge_set,
    rank_graph,
    rank_of_edge_list,
    rank_vertex_set,
    read_graph_text,
    spanning_forest,
    write_graph_text,
)
from .instances import (
    AnnotatedInstance,
    CvcInstance,
    EifInstance,
    MaxcutInstance,
    MisInstance,
    SolveStats,
    Verdict,
    witness_is_valid,
)
from .oracles import (
    oracle_annotated,
    oracle_constrained_maxcut,
    oracle_contraction_vc,
    oracle_digraph_maxcut,
    oracle_edge_induced_forest,
    oracle_multicolored_is,
    oracle_solution_pair,
)
from .pipeline import (
    enumerate_annotated,
    expand_k_to_d,
    extract_witness,
    maxcut_to_digraph,
    preprocess_low_rank_cover,
    rr1_eliminate_x_edges,
    rr2_matching_simplify,
    solve,
    solve_connected,
)

__version__ = "0.1.0"
