"""Bounded-indegree k-forests and edge-connectivity augmentation.

The core solver (:func:`solve`) finds a maximum union of ``k`` forests in a
digraph subject to per-vertex indegree budgets.  Its vertex deficits give
minimal half-extensions, from which :func:`augment_directed` and
:func:`augment_undirected` build optimal connectivity augmentations by edge
splitting.
"""

from .certificate import (
    Certificate,
    VerifyReport,
    alpha_values,
    closed_set,
    is_F_closed,
    optimal_subpartition,
    verify_minmax,
)
from .directed import AugmentResult, augment_directed, half_extension, split_all
from .graph import (
    Digraph,
    GraphParseError,
    InputError,
    InvariantError,
    UGraph,
    VertexSet,
    doubled,
    parse_graph,
    read_graph,
    reverse,
    serialize_graph,
)
from .kforest import ForestLabeling, KForestSolver, TauSpec, solve
from .mincut import is_strongly_k_connected, max_flow, strong_connectivity
from .undirected import UAugmentResult, augment_undirected, split_all_undirected

__all__ = [
    "AugmentResult",
    "Certificate",
    "Digraph",
    "ForestLabeling",
    "GraphParseError",
    "InputError",
    "InvariantError",
    "KForestSolver",
    "TauSpec",
    "UAugmentResult",
    "UGraph",
    "VertexSet",
    "VerifyReport",
    "alpha_values",
    "augment_directed",
    "augment_undirected",
    "closed_set",
    "doubled",
    "half_extension",
    "is_F_closed",
    "is_strongly_k_connected",
    "max_flow",
    "optimal_subpartition",
    "parse_graph",
    "read_graph",
    "reverse",
    "serialize_graph",
    "solve",
    "split_all",
    "split_all_undirected",
    "strong_connectivity",
    "verify_minmax",
]

__version__ = "0.1.0"
