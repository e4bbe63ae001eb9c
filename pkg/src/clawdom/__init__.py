"""Exact k-Dominating Set on claw-free graphs, k-Clique on K_1,t-free graphs,
and the red-blue reduction gadgets that connect them."""

from __future__ import annotations

from .clique import find_k_clique_tclawfree, ramsey_threshold
from .graph import Graph, build_graph, dominates, find_induced_star, induced_subgraph
from .mis import maximum_independent_set
from .oracle import brute_max_clique, brute_mds, brute_mids, brute_rbds
from .solver import Solution, replay, solve

__all__ = [
    "Graph",
    "Solution",
    "brute_max_clique",
    "brute_mds",
    "brute_mids",
    "brute_rbds",
    "build_graph",
    "dominates",
    "find_induced_star",
    "find_k_clique_tclawfree",
    "induced_subgraph",
    "maximum_independent_set",
    "ramsey_threshold",
    "replay",
    "solve",
]
