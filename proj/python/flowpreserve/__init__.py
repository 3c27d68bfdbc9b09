"""Fault-tolerant bounded-flow preservers for directed graphs."""

from ._core import (
    BudgetExceeded,
    CapGraph,
    DiGraph,
    OracleLoadError,
    ParseError,
    PreserverResult,
    ReachabilityOracle,
    audit_bounds,
    bounded_outdegree_transform,
    build_oracle,
    capacitated_ftbfp,
    farthest_min_cut,
    ftbfp,
    ftbfp_single_dest,
    hardness_graph,
    lower_bound_instance,
    max_flow,
    nearest_min_cut,
    random_capgraph,
    random_digraph,
    splitmix64,
    verify_ftbfp,
)

__version__ = "0.1.0"
