"""Exact maximum independent set by branch-and-reduce, with a measure-and-conquer analyzer."""

from .analysis import (
    AnalysisReport,
    Recurrence,
    analyze,
    branching_factor,
    catalog,
    corner_recurrences,
    cross_level_constraints,
    lambda_theta,
    optimize_weights,
)
from .branching import (
    edge_branch_subproblems,
    find_short_edges,
    select_optimal_short_edge,
    select_optimal_vertex,
    vertex_branch_subproblems,
)
from .graph import Graph, GraphError, contract_set, delete_vertices, neighborhood_stats, second_neighborhood
from .matching import LineClass, detect_line_class, maximum_matching, reconstruct_root_graph
from .reductions import (
    SolveTrace,
    extending_set,
    find_complete_k_independent,
    fold,
    is_unconfined,
    reconstruct_certificate,
    reduce,
)
from .solver import Solution, SolverOptions, brute_force_mis, fallback_low_degree, mis_theta, solve
from .weights import REFERENCE_WEIGHTS, WeightVector, measure

__all__ = [
    "AnalysisReport", "Graph", "GraphError", "LineClass", "REFERENCE_WEIGHTS", "Recurrence", "Solution",
    "SolveTrace", "SolverOptions", "WeightVector", "analyze", "branching_factor", "brute_force_mis",
    "catalog", "contract_set", "corner_recurrences", "cross_level_constraints", "delete_vertices",
    "detect_line_class", "edge_branch_subproblems", "extending_set", "fallback_low_degree",
    "find_complete_k_independent", "find_short_edges", "fold", "is_unconfined", "lambda_theta",
    "maximum_matching", "measure", "mis_theta", "neighborhood_stats", "optimize_weights",
    "reconstruct_certificate", "reconstruct_root_graph", "reduce", "second_neighborhood",
    "select_optimal_short_edge", "select_optimal_vertex", "solve", "vertex_branch_subproblems",
]
