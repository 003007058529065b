"""Structural vulnerability analysis of power-grid graphs.

Spectral fragmentation thresholds, analytic failure-count bounds, Monte
Carlo validation, and adversarial line-removal planning.
"""

from .attack import (AttackTrace, attack_betweenness, attack_eigen_iterative,
                     attack_eigen_single_shot, attack_random,
                     attack_trace_greedy, eigen_perturbation_scores,
                     exhaustive_optimal_removal)
from .bounds import (EdgeDeficit, FailureBoundCurve, Thresholds, bound_curve,
                     edge_survival_deficit, failure_upper_bound,
                     load_service_probability, thresholds)
from .graphs import (AliveMask, ComponentPartition, Grid, GraphError,
                     GraphParseError, connected_components, edge_betweenness,
                     largest_component_size, parse_edge_list, parse_graph_json,
                     remove_edge, remove_edges, serialize_edge_list,
                     serialize_graph_json)
from .nonbacktracking import (NonBacktrackingGraph, build_nonbacktracking_graph,
                              modified_adjacency)
from .simulate import (SimulationReport, TrialOutcome,
                       empirical_fragmentation_point, fragmentation_cutoff,
                       monte_carlo, run_trial, substream)
from .spectral import (ConvergenceError, LogTrace, SpectralEstimate,
                       leading_eigenpair, log_trace_power, symmetric_spectrum)

__version__ = "0.1.0"

__all__ = [
    "AliveMask", "AttackTrace", "ComponentPartition", "ConvergenceError",
    "EdgeDeficit", "FailureBoundCurve", "GraphError", "GraphParseError",
    "Grid", "LogTrace", "NonBacktrackingGraph", "SimulationReport",
    "SpectralEstimate", "Thresholds", "TrialOutcome",
    "attack_betweenness", "attack_eigen_iterative", "attack_eigen_single_shot",
    "attack_random", "attack_trace_greedy", "bound_curve",
    "build_nonbacktracking_graph", "connected_components", "edge_betweenness",
    "edge_survival_deficit", "eigen_perturbation_scores",
    "empirical_fragmentation_point", "exhaustive_optimal_removal",
    "failure_upper_bound", "fragmentation_cutoff", "largest_component_size",
    "leading_eigenpair", "load_service_probability", "log_trace_power",
    "modified_adjacency", "monte_carlo", "parse_edge_list", "parse_graph_json",
    "remove_edge", "remove_edges", "run_trial", "serialize_edge_list",
    "serialize_graph_json", "substream", "symmetric_spectrum", "thresholds",
]
