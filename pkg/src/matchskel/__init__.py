"""Matching-skeleton composable coresets for bipartite maximum matching."""
from .coreset import (
    BASELINE,
    CANONICAL,
    ExperimentConfig,
    ExperimentReport,
    GraphSource,
    Policy,
    TrialReport,
    avoid,
    pathological_experiment,
    run_experiment,
    run_trial,
)
from .decomposition import (
    INFINITY,
    Block,
    BlockDecomposition,
    alpha_feasible,
    block_decomposition,
    brute_force_min_expansion,
    canonical_vertex_cover,
    check_robustness,
    expansion_of,
    min_expansion,
    verify_decomposition,
)
from .graphcore import (
    BipartiteGraph,
    PartitionResult,
    VertexRef,
    build_graph,
    gen_pathological,
    gen_perfect,
    gen_random_bipartite,
    neighbors,
    parse_edge_list,
    random_k_partition,
    read_edge_list,
    union_graphs,
    write_edge_list,
)
from .matching import (
    Verdict,
    brute_force_matching,
    maximum_matching,
    minimum_vertex_cover,
    verify_alpha_matching,
    verify_fractional_matching,
)
from .skeleton import (
    Refusal,
    Skeleton,
    block_alpha_matching,
    eliminate_cycles,
    matching_skeleton,
    skeleton_avoiding,
    verify_skeleton,
)

__all__ = [
    "alpha_feasible",
    "avoid",
    "BASELINE",
    "BipartiteGraph",
    "Block",
    "block_alpha_matching",
    "block_decomposition",
    "BlockDecomposition",
    "brute_force_matching",
    "brute_force_min_expansion",
    "build_graph",
    "CANONICAL",
    "canonical_vertex_cover",
    "check_robustness",
    "eliminate_cycles",
    "expansion_of",
    "ExperimentConfig",
    "ExperimentReport",
    "gen_pathological",
    "gen_perfect",
    "gen_random_bipartite",
    "GraphSource",
    "INFINITY",
    "matching_skeleton",
    "maximum_matching",
    "min_expansion",
    "minimum_vertex_cover",
    "neighbors",
    "parse_edge_list",
    "PartitionResult",
    "pathological_experiment",
    "Policy",
    "random_k_partition",
    "read_edge_list",
    "Refusal",
    "run_experiment",
    "run_trial",
    "Skeleton",
    "skeleton_avoiding",
    "TrialReport",
    "union_graphs",
    "Verdict",
    "verify_alpha_matching",
    "verify_decomposition",
    "verify_fractional_matching",
    "verify_skeleton",
    "VertexRef",
    "write_edge_list",
]

__version__ = "0.1.0"
