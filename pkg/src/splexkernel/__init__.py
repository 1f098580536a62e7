"""Kernelization and exact solving for s-plex cluster vertex deletion."""

from .fisg import Fisg, enumerate_minimal_fisgs, find_fisg, minimize_fisg, validate_fisg
from .graph import Graph, Instance, connected_components, is_splex, is_splex_cluster_graph
from .kernel import KernelResult, approx_solution, kernelize
from .solver import (
    Solution,
    brute_force_decide,
    export_hitting_set,
    lift_solution,
    solve,
    solve_branching,
    verify_solution,
)

__all__ = [
    "Fisg",
    "Graph",
    "Instance",
    "KernelResult",
    "Solution",
    "approx_solution",
    "brute_force_decide",
    "connected_components",
    "enumerate_minimal_fisgs",
    "export_hitting_set",
    "find_fisg",
    "is_splex",
    "is_splex_cluster_graph",
    "kernelize",
    "lift_solution",
    "minimize_fisg",
    "solve",
    "solve_branching",
    "validate_fisg",
    "verify_solution",
]
