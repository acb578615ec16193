"""
Graph export: DOT, tab-separated edge lists and CSV, deterministically ordered.
"""

import csv
import io
from typing import List

from fdots.graph.builder import AssociationGraph, Vertex

FORMATS = ("dot", "edge-list", "csv")
CSV_COLUMNS = ("source", "target", "label")

_KIND_ORDER = {"fdo": 0, "attribute": 1, "profile": 2, "operation": 3}


def _sort_key(vertex: Vertex):
    return (_KIND_ORDER.get(vertex[0], len(_KIND_ORDER)), vertex[0], vertex[1])


def node_name(vertex: Vertex) -> str:
    return f"{vertex[0]}:{vertex[1]}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _ordered_edges(graph: AssociationGraph) -> List[tuple]:
    return sorted(graph.edges(), key=lambda e: (_sort_key(e[0]), _sort_key(e[1]), e[2]))


def to_dot(graph: AssociationGraph) -> str:
    lines = ["digraph g {"]
    for vertex in sorted(graph.graph.nodes, key=_sort_key):
        lines.append(f"  {_quote(node_name(vertex))};")
    for source, target, label in _ordered_edges(graph):
        lines.append(
            f"  {_quote(node_name(source))} -> {_quote(node_name(target))} [label={_quote(label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edge_list(graph: AssociationGraph) -> str:
    return "".join(
        f"{node_name(source)}\t{node_name(target)}\t{label}\n"
        for source, target, label in _ordered_edges(graph)
    )


def to_csv(graph: AssociationGraph) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for source, target, label in _ordered_edges(graph):
        writer.writerow((node_name(source), node_name(target), label))
    return buffer.getvalue()


def export_graph(graph: AssociationGraph, format: str = "dot") -> bytes:
    """
    Serialize ``graph`` as UTF-8 bytes with LF line endings.

    Vertices are ordered by kind (fdo, attribute, profile, operation) and then
    by id, so equal graphs always export to identical bytes.

    Raises:
        ValueError: If ``format`` is not one of FORMATS
    """
    if format == "dot":
        return to_dot(graph).encode("utf-8")
    if format == "edge-list":
        return to_edge_list(graph).encode("utf-8")
    if format == "csv":
        return to_csv(graph).encode("utf-8")
    raise ValueError(f"Unknown graph format '{format}'. Valid formats: {list(FORMATS)}")
