"""Join trees of acyclic conjunctive queries: construction, classification,
enumeration by edits, canonical trees and plan conversion."""
from .acyclicity import (
    UNKNOWN,
    Classification,
    GyoFailure,
    GyoOrder,
    classify,
    find_berge_cycle,
    find_gamma_cycle,
    gyo_reduce,
    is_alpha,
    is_berge,
    is_linear,
)
from .canonical import NotBergeAcyclic, canonical_tree, geodetic_check, is_canonical
from .core import (
    Hypergraph,
    HypergraphFormatError,
    LineGraph,
    Predicate,
    QueryParseError,
    build_hypergraph,
    build_line_graph,
    connected_components,
    hypergraph_from_file,
    line_graph,
    load_hypergraph,
    parse_query,
)
from .enumeration import Edit, EditStream, count_join_trees, enumerate_edits, join_trees, materialize_join_trees
from .equivgraph import (
    EquivalentGraph,
    InvariantViolation,
    build_equivalent_graph,
    build_equivalent_graph_gamma,
    build_mwjt,
    duplicate_vertex,
    slide,
    union_join_graph,
)
from .mcs import RootedTree, default_root, mcs_tree, mcs_tree_gamma, validate_join_tree
from .planconv import Orphan, convert_plan, is_connected_plan, is_reverse_gyo, sweep_plans
from .treeindex import TreeIndex, build_index

__all__ = [
    "UNKNOWN", "Classification", "GyoFailure", "GyoOrder", "classify", "find_berge_cycle",
    "find_gamma_cycle", "gyo_reduce", "is_alpha", "is_berge", "is_linear",
    "NotBergeAcyclic", "canonical_tree", "geodetic_check", "is_canonical",
    "Hypergraph", "HypergraphFormatError", "LineGraph", "Predicate", "QueryParseError",
    "build_hypergraph", "build_line_graph", "connected_components", "hypergraph_from_file",
    "line_graph", "load_hypergraph", "parse_query",
    "Edit", "EditStream", "count_join_trees", "enumerate_edits", "join_trees", "materialize_join_trees",
    "EquivalentGraph", "InvariantViolation", "build_equivalent_graph", "build_equivalent_graph_gamma",
    "build_mwjt", "duplicate_vertex", "slide", "union_join_graph",
    "RootedTree", "default_root", "mcs_tree", "mcs_tree_gamma", "validate_join_tree",
    "Orphan", "convert_plan", "is_connected_plan", "is_reverse_gyo", "sweep_plans",
    "TreeIndex", "build_index",
]
