"""
Association Graph Models

Directed graphs whose vertices are FDOs, operations, profiles and the
attributes taking part in association, and whose edges are labelled
``has-attribute`` or ``references``:

- record typing:    f -> a -> o                      (2 edges)
- profile typing:   f -> a -> p -> a' -> o           (4 edges)
- attribute typing: f -> a' <- a <- o                (3 edges, closed lines)

Attribute vertices are identified by owner, key and value, so equal key-value
pairs in different records are different vertices.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from fdots.core.errors import DanglingReferenceError
from fdots.core.model import (
    AssociationModel,
    Ecosystem,
    OPERATION_LIST_KEY,
    OPERATION_REF_KEY,
    PROFILE_REF_KEY,
    REQUIRED_INPUT_KEY,
)
from fdots.core.pid import Pid

logger = logging.getLogger(__name__)

FDO = "fdo"
OPERATION = "operation"
PROFILE = "profile"
ATTRIBUTE = "attribute"

HAS_ATTRIBUTE = "has-attribute"
REFERENCES = "references"

Vertex = Tuple[str, str]
Pair = Tuple[Pid, Pid]

PATH_LENGTHS = {
    AssociationModel.RECORD: 2,
    AssociationModel.PROFILE: 4,
    AssociationModel.ATTRIBUTE: 3,
}

_ALLOWED_EDGES = {
    AssociationModel.RECORD: {
        (FDO, ATTRIBUTE, HAS_ATTRIBUTE),
        (ATTRIBUTE, OPERATION, REFERENCES),
    },
    AssociationModel.PROFILE: {
        (FDO, ATTRIBUTE, HAS_ATTRIBUTE),
        (ATTRIBUTE, PROFILE, REFERENCES),
        (PROFILE, ATTRIBUTE, HAS_ATTRIBUTE),
        (ATTRIBUTE, OPERATION, REFERENCES),
    },
    AssociationModel.ATTRIBUTE: {
        (FDO, ATTRIBUTE, HAS_ATTRIBUTE),
        (OPERATION, ATTRIBUTE, HAS_ATTRIBUTE),
        (ATTRIBUTE, ATTRIBUTE, REFERENCES),
    },
}


def attribute_vertex(owner: Pid, key: str, value: str) -> Vertex:
    return (ATTRIBUTE, f"{owner}|{key}={value}")


class AssociationGraph:
    """
    Graph model of one association model.

    Wraps a ``networkx.DiGraph`` whose nodes are ``(kind, id)`` tuples. In the
    attribute model, operations without required inputs carry the node flag
    ``universal`` and are associated with every FDO.
    """

    def __init__(self, model: AssociationModel, graph: Optional[nx.DiGraph] = None):
        self.model = AssociationModel.parse(model)
        self.graph = graph if graph is not None else nx.DiGraph()

    # Construction helpers

    def add_vertex(self, vertex: Vertex, **data) -> None:
        self.graph.add_node(vertex, **data)

    def add_edge(self, source: Vertex, target: Vertex, label: str) -> None:
        self.graph.add_edge(source, target, label=label)

    # Views

    def vertices(self, kind: Optional[str] = None) -> List[Vertex]:
        return sorted(v for v in self.graph.nodes if kind is None or v[0] == kind)

    def edges(self) -> List[Tuple[Vertex, Vertex, str]]:
        return sorted((u, v, d.get("label", "")) for u, v, d in self.graph.edges(data=True))

    def successors(self, vertex: Vertex, kind: Optional[str] = None) -> List[Vertex]:
        return [v for v in self.graph.successors(vertex) if kind is None or v[0] == kind]

    def is_universal(self, vertex: Vertex) -> bool:
        return bool(self.graph.nodes[vertex].get("universal", False))

    def number_of_vertices(self) -> int:
        return self.graph.number_of_nodes()

    def number_of_edges(self) -> int:
        return self.graph.number_of_edges()

    def associations(self) -> Set[Pair]:
        return associations_from_graph(self)

    def path_length(self, f: Pid, o: Pid) -> Optional[int]:
        """
        Length of the shortest association path between ``f`` and ``o``.

        Directed for record and profile typing, undirected for attribute
        typing where requirement edges point into the FDO's attributes.
        """
        source, target = (FDO, str(f)), (OPERATION, str(o))
        graph = self.graph
        if self.model is AssociationModel.ATTRIBUTE:
            graph = graph.to_undirected(as_view=True)
        try:
            return nx.shortest_path_length(graph, source, target)
        except (nx.NetworkXNoPath, nx.NodeNotFound):
            return None

    def check_invariants(self) -> List[str]:
        """
        Check the structural invariants of the graph model.

        Returns:
            List of human-readable violations; empty when the graph is sound
        """
        problems = []
        allowed_kinds = {FDO, OPERATION, ATTRIBUTE}
        if self.model is AssociationModel.PROFILE:
            allowed_kinds.add(PROFILE)
        for vertex in self.graph.nodes:
            if vertex[0] not in allowed_kinds:
                problems.append(f"vertex {vertex} has kind not used by the {self.model.value} model")

        allowed_edges = _ALLOWED_EDGES[self.model]
        for u, v, label in self.edges():
            if self.graph.has_edge(v, u):
                problems.append(f"anti-parallel edges between {u} and {v}")
            if (u[0], v[0], label) not in allowed_edges:
                problems.append(f"edge {u} -> {v} [{label}] not allowed in the {self.model.value} model")

        expected = PATH_LENGTHS[self.model]
        for f, o in sorted(self.associations()):
            op_vertex = (OPERATION, str(o))
            if self.model is AssociationModel.ATTRIBUTE and not self.successors(op_vertex):
                continue
            length = self.path_length(f, o)
            if length != expected:
                problems.append(f"association ({f}, {o}) has path length {length}, expected {expected}")
        return problems

    def get_stats(self) -> Dict[str, int]:
        stats = {kind: len(self.vertices(kind)) for kind in (FDO, ATTRIBUTE, PROFILE, OPERATION)}
        stats["edges"] = self.number_of_edges()
        return stats

    def __repr__(self) -> str:
        return (
            f"<AssociationGraph model={self.model.value} "
            f"vertices={self.number_of_vertices()} edges={self.number_of_edges()}>"
        )


def _operation_vertex(ecosystem: Ecosystem, value: str, referenced_by: Pid) -> Vertex:
    try:
        pid = Pid(value)
    except ValueError:
        raise DanglingReferenceError(value, referenced_by) from None
    if pid not in ecosystem.operations:
        raise DanglingReferenceError(pid, referenced_by)
    return (OPERATION, str(pid))


def _build_record(graph: AssociationGraph, ecosystem: Ecosystem) -> None:
    for record in ecosystem.records.values():
        fdo = (FDO, str(record.pid))
        for attribute in record.attributes:
            if attribute.key != OPERATION_REF_KEY:
                continue
            target = _operation_vertex(ecosystem, attribute.value, record.pid)
            vertex = attribute_vertex(record.pid, attribute.key, attribute.value)
            graph.add_edge(fdo, vertex, HAS_ATTRIBUTE)
            graph.add_edge(vertex, target, REFERENCES)


def _build_profile(graph: AssociationGraph, ecosystem: Ecosystem) -> None:
    for profile in ecosystem.profiles.values():
        graph.add_vertex((PROFILE, str(profile.pid)))
        if not profile.operation_list:
            continue
        view = profile.to_record()
        value = view.values_for(OPERATION_LIST_KEY)[0]
        list_vertex = attribute_vertex(profile.pid, OPERATION_LIST_KEY, value)
        graph.add_edge((PROFILE, str(profile.pid)), list_vertex, HAS_ATTRIBUTE)
        for op in profile.operation_list:
            graph.add_edge(list_vertex, _operation_vertex(ecosystem, str(op), profile.pid), REFERENCES)

    for record in ecosystem.records.values():
        fdo = (FDO, str(record.pid))
        for attribute in record.attributes:
            if attribute.key != PROFILE_REF_KEY:
                continue
            try:
                target = Pid(attribute.value)
            except ValueError:
                raise DanglingReferenceError(attribute.value, record.pid) from None
            if target not in ecosystem.profiles:
                raise DanglingReferenceError(target, record.pid)
            vertex = attribute_vertex(record.pid, attribute.key, attribute.value)
            graph.add_edge(fdo, vertex, HAS_ATTRIBUTE)
            graph.add_edge(vertex, (PROFILE, str(target)), REFERENCES)


def _build_attribute(graph: AssociationGraph, ecosystem: Ecosystem) -> None:
    requirements_by_key: Dict[str, List[Vertex]] = {}
    for operation in ecosystem.operations.values():
        op_vertex = (OPERATION, str(operation.pid))
        graph.add_vertex(op_vertex, universal=not operation.required_inputs)
        for requirement in operation.required_inputs:
            vertex = attribute_vertex(operation.pid, REQUIRED_INPUT_KEY, requirement.encode())
            graph.add_edge(op_vertex, vertex, HAS_ATTRIBUTE)
            requirements_by_key.setdefault(requirement.key, []).append(vertex)

    for record in ecosystem.records.values():
        fdo = (FDO, str(record.pid))
        for attribute in record.attributes:
            sources = requirements_by_key.get(attribute.key)
            if not sources:
                continue
            vertex = attribute_vertex(record.pid, attribute.key, attribute.value)
            graph.add_edge(fdo, vertex, HAS_ATTRIBUTE)
            for source in sources:
                graph.add_edge(source, vertex, REFERENCES)


def build_graph(ecosystem: Ecosystem) -> AssociationGraph:
    """
    Build the graph model of ``ecosystem``.

    All FDOs and operations become vertices; profiles only under profile
    typing. Only attributes taking part in association become vertices.

    Raises:
        DanglingReferenceError: If an association attribute references an
            unknown component
    """
    graph = AssociationGraph(ecosystem.model)
    for pid in sorted(ecosystem.records):
        graph.add_vertex((FDO, str(pid)))
    for pid in sorted(ecosystem.operations):
        graph.add_vertex((OPERATION, str(pid)))

    if graph.model is AssociationModel.RECORD:
        _build_record(graph, ecosystem)
    elif graph.model is AssociationModel.PROFILE:
        _build_profile(graph, ecosystem)
    else:
        _build_attribute(graph, ecosystem)

    logger.debug(f"Built {graph!r}")
    return graph


def _pid_of(vertex: Vertex) -> Pid:
    return Pid(vertex[1])


def associations_from_graph(graph: AssociationGraph) -> Set[Pair]:
    """
    Read the association relation off the graph.

    Record and profile typing follow directed paths from FDOs to operations.
    Attribute typing applies the closed-lines rule: ``o`` is associated with
    ``f`` iff every requirement vertex of ``o`` references an attribute vertex
    of ``f``; operations flagged ``universal`` match every FDO.
    """
    pairs: Set[Pair] = set()
    fdos = graph.vertices(FDO)

    if graph.model is AssociationModel.RECORD:
        for fdo in fdos:
            for attribute in graph.successors(fdo, ATTRIBUTE):
                for op in graph.successors(attribute, OPERATION):
                    pairs.add((_pid_of(fdo), _pid_of(op)))
        return pairs

    if graph.model is AssociationModel.PROFILE:
        for fdo in fdos:
            for attribute in graph.successors(fdo, ATTRIBUTE):
                for profile in graph.successors(attribute, PROFILE):
                    for list_attribute in graph.successors(profile, ATTRIBUTE):
                        for op in graph.successors(list_attribute, OPERATION):
                            pairs.add((_pid_of(fdo), _pid_of(op)))
        return pairs

    attributes_of: Dict[Vertex, FrozenSet[Vertex]] = {
        fdo: frozenset(graph.successors(fdo, ATTRIBUTE)) for fdo in fdos
    }
    for op in graph.vertices(OPERATION):
        requirements = graph.successors(op, ATTRIBUTE)
        if not requirements:
            if graph.is_universal(op):
                pairs.update((_pid_of(fdo), _pid_of(op)) for fdo in fdos)
            continue
        for fdo, owned in attributes_of.items():
            if all(owned.intersection(graph.successors(r, ATTRIBUTE)) for r in requirements):
                pairs.add((_pid_of(fdo), _pid_of(op)))
    return pairs


@dataclass(frozen=True)
class GraphDivergence:
    """Pairs on which the graph and an engine disagree."""

    only_in_graph: FrozenSet[Pair] = field(default_factory=frozenset)
    only_in_engine: FrozenSet[Pair] = field(default_factory=frozenset)

    @property
    def agrees(self) -> bool:
        return not self.only_in_graph and not self.only_in_engine

    def describe(self) -> List[str]:
        lines = [f"graph only: {f} -> {o}" for f, o in sorted(self.only_in_graph)]
        lines.extend(f"engine only: {f} -> {o}" for f, o in sorted(self.only_in_engine))
        return lines


def compare_with_engine(graph: AssociationGraph, engine) -> GraphDivergence:
    """
    Compare the graph relation with an engine's relation.

    The attribute graph only models key presence, so an attribute engine in
    key-value mode may legitimately diverge; the divergence is reported.
    """
    from_graph = associations_from_graph(graph)
    from_engine = set(engine.relation())
    divergence = GraphDivergence(
        only_in_graph=frozenset(from_graph - from_engine),
        only_in_engine=frozenset(from_engine - from_graph),
    )
    if not divergence.agrees:
        logger.warning(
            f"Graph and engine disagree on {len(divergence.only_in_graph) + len(divergence.only_in_engine)} pairs"
        )
    return divergence


def reachable_operations(graph: AssociationGraph, fdo: Pid) -> Set[Pid]:
    """Operations reachable from ``fdo`` along directed edges."""
    source = (FDO, str(fdo))
    if source not in graph.graph:
        return set()
    return {_pid_of(v) for v in nx.descendants(graph.graph, source) if v[0] == OPERATION}

