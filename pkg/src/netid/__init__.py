"""Identifiability analysis for dynamic networks with partial excitation and measurement."""

from .circular import (
    CircleDescriptor,
    CircularVerdict,
    DegenerateInstanceError,
    NotACircleError,
    RecoveryResult,
    circular_identifiable,
    detect_circle,
    recover_circle_modules,
)
from .combinatorics import (
    Matching,
    max_matching,
    max_vertex_disjoint_paths,
    vertex_disjoint_paths,
)
from .conditions import (
    AnalysisOptions,
    AnalysisReport,
    ConditionResult,
    analyze,
    check_bipartite_count,
    check_cover,
    check_naive_count,
    check_rank_conditions,
    check_reduced_count,
    check_single_signal_count,
    prune_bipartite_edges,
    render_text,
)
from .model import (
    NetworkModel,
    TopologyError,
    in_neighbours,
    out_neighbours,
    parse_network,
    serialize,
)
from .numeric import (
    InstantiationError,
    NumericError,
    NumericInstance,
    RankMismatchError,
    RankReport,
    eliminate_dependent_entries,
    generic_rank,
    instantiate,
    numeric_rank,
)
from .structure import (
    BipartiteGraph,
    EntryClass,
    FunctionSet,
    StructuralPattern,
    bipartite_graph,
    function_set,
    structural_pattern,
    to_dot,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisOptions",
    "AnalysisReport",
    "BipartiteGraph",
    "CircleDescriptor",
    "CircularVerdict",
    "ConditionResult",
    "DegenerateInstanceError",
    "EntryClass",
    "FunctionSet",
    "InstantiationError",
    "Matching",
    "NetworkModel",
    "NotACircleError",
    "NumericError",
    "NumericInstance",
    "RankMismatchError",
    "RankReport",
    "RecoveryResult",
    "StructuralPattern",
    "TopologyError",
    "analyze",
    "bipartite_graph",
    "check_bipartite_count",
    "check_cover",
    "check_naive_count",
    "check_rank_conditions",
    "check_reduced_count",
    "check_single_signal_count",
    "circular_identifiable",
    "detect_circle",
    "eliminate_dependent_entries",
    "function_set",
    "generic_rank",
    "in_neighbours",
    "instantiate",
    "max_matching",
    "max_vertex_disjoint_paths",
    "numeric_rank",
    "out_neighbours",
    "parse_network",
    "prune_bipartite_edges",
    "recover_circle_modules",
    "render_text",
    "serialize",
    "structural_pattern",
    "to_dot",
    "vertex_disjoint_paths",
]
