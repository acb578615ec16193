"""Graph models of the three association mechanisms."""

from fdots.graph.builder import (
    ATTRIBUTE,
    FDO,
    HAS_ATTRIBUTE,
    OPERATION,
    PATH_LENGTHS,
    PROFILE,
    REFERENCES,
    AssociationGraph,
    GraphDivergence,
    associations_from_graph,
    build_graph,
    compare_with_engine,
    reachable_operations,
)
from fdots.graph.export import FORMATS, export_graph

__all__ = [
    "ATTRIBUTE",
    "AssociationGraph",
    "FDO",
    "FORMATS",
    "GraphDivergence",
    "HAS_ATTRIBUTE",
    "OPERATION",
    "PATH_LENGTHS",
    "PROFILE",
    "REFERENCES",
    "associations_from_graph",
    "build_graph",
    "compare_with_engine",
    "export_graph",
    "reachable_operations",
]
