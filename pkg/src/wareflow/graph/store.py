"""In-memory property graph with label, edge-type, and package indexes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from wareflow.graph.values import DateTime, Value
from wareflow.sim.config import Violation

NODE_LABELS = ("SUPPLIER", "WORKER", "AGV", "FL", "STORAGE")
EDGE_TYPES = ("SUPPLIER_TO_WORKER", "WORKER_TO_AGV", "AGV_TO_FL", "FL_TO_STORAGE")

KEY_PROPERTY = {
    "SUPPLIER": "supplier_id",
    "WORKER": "worker_id",
    "AGV": "agv_id",
    "FL": "forklift_id",
    "STORAGE": "block_id",
}

# Timestamp properties each edge type must carry, in chain order.
EDGE_REQUIRED_PROPS = {
    "SUPPLIER_TO_WORKER": ("package_id", "worker_pick_up_start"),
    "WORKER_TO_AGV": ("package_id", "agv_arrival", "agv_journey_start", "worker_pick_up_end"),
    "AGV_TO_FL": ("package_id", "agv_journey_end", "fl_placement_start"),
    "FL_TO_STORAGE": ("package_id", "fl_placement_end"),
}

# Monotonicity along a package's edge quadruple (agv_arrival may precede
# worker_pick_up_end when the vehicle pre-arrived, so it is not chained).
PACKAGE_CHAIN = (
    ("SUPPLIER_TO_WORKER", "worker_pick_up_start"),
    ("WORKER_TO_AGV", "worker_pick_up_end"),
    ("WORKER_TO_AGV", "agv_journey_start"),
    ("AGV_TO_FL", "agv_journey_end"),
    ("AGV_TO_FL", "fl_placement_start"),
    ("FL_TO_STORAGE", "fl_placement_end"),
)


@dataclass(frozen=True)
class NodeRecord:
    label: str
    key: str
    props: dict[str, Value] = field(default_factory=dict)

    @property
    def ref(self) -> tuple[str, str]:
        return (self.label, self.key)


@dataclass(frozen=True)
class EdgeRecord:
    type: str
    src: tuple[str, str]
    dst: tuple[str, str]
    props: dict[str, Value] = field(default_factory=dict)

    @property
    def package_id(self):
        return self.props.get("package_id")


class PropertyGraph:
    """Immutable after construction; indexes mirror the full scan."""

    def __init__(self, nodes: list[NodeRecord], edges: list[EdgeRecord]):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.nodes_by_label: dict[str, list[NodeRecord]] = {}
        self.node_by_ref: dict[tuple[str, str], NodeRecord] = {}
        self.edges_by_type: dict[str, list[EdgeRecord]] = {}
        self.edges_by_package: dict[str, dict[str, EdgeRecord]] = {}
        self.out_edges: dict[tuple[str, str], list[EdgeRecord]] = {}
        self.in_edges: dict[tuple[str, str], list[EdgeRecord]] = {}
        for node in self.nodes:
            self.nodes_by_label.setdefault(node.label, []).append(node)
            self.node_by_ref[node.ref] = node
        for edge in self.edges:
            self.edges_by_type.setdefault(edge.type, []).append(edge)
            self.out_edges.setdefault(edge.src, []).append(edge)
            self.in_edges.setdefault(edge.dst, []).append(edge)
            pid = edge.package_id
            if isinstance(pid, str):
                self.edges_by_package.setdefault(pid, {})[edge.type] = edge

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PropertyGraph):
            return NotImplemented
        return canonical_order(self) == canonical_order(other)

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"PropertyGraph(nodes={len(self.nodes)}, edges={len(self.edges)})"


def canonical_order(graph: PropertyGraph) -> tuple[list[NodeRecord], list[EdgeRecord]]:
    """Stable ordering: schema label order then key; edge type order then package_id."""
    label_rank = {label: i for i, label in enumerate(NODE_LABELS)}
    type_rank = {t: i for i, t in enumerate(EDGE_TYPES)}
    nodes = sorted(graph.nodes, key=lambda n: (label_rank.get(n.label, 99), n.label, n.key))
    edges = sorted(
        graph.edges,
        key=lambda e: (type_rank.get(e.type, 99), e.type, str(e.package_id), e.src, e.dst),
    )
    return nodes, edges


def validate_graph(graph: PropertyGraph) -> list[Violation]:
    """Referential integrity, quadruple completeness, chain monotonicity."""
    out: list[Violation] = []

    seen_refs = set()
    for node in graph.nodes:
        if node.label not in NODE_LABELS:
            out.append(Violation("UNKNOWN_LABEL", f"node label {node.label!r} not in schema"))
        if node.ref in seen_refs:
            out.append(Violation("DUPLICATE_NODE", f"duplicate node {node.ref}"))
        seen_refs.add(node.ref)
        for key, value in node.props.items():
            if isinstance(value, DateTime) and not (math.isfinite(value.seconds) and value.seconds >= 0):
                out.append(Violation("BAD_DATETIME", f"node {node.ref} property {key} is not a finite non-negative datetime"))

    for edge in graph.edges:
        if edge.type not in EDGE_TYPES:
            out.append(Violation("UNKNOWN_TYPE", f"edge type {edge.type!r} not in schema"))
            continue
        for ref in (edge.src, edge.dst):
            if ref not in graph.node_by_ref:
                out.append(Violation("DANGLING_EDGE", f"{edge.type} endpoint {ref} does not exist"))
        for prop in EDGE_REQUIRED_PROPS[edge.type]:
            if prop not in edge.props:
                out.append(Violation("MISSING_PROPERTY", f"{edge.type} for {edge.package_id!r} lacks {prop}"))

    for pid, quad in sorted(graph.edges_by_package.items()):
        for etype in EDGE_TYPES:
            if etype not in quad:
                out.append(Violation("MISSING_EDGE", f"package {pid} lacks {etype}"))
        chain = []
        for etype, prop in PACKAGE_CHAIN:
            edge = quad.get(etype)
            if edge is None or prop not in edge.props:
                chain = None
                break
            value = edge.props[prop]
            if not isinstance(value, DateTime):
                out.append(Violation("BAD_TYPE", f"package {pid} {prop} is not a DateTime"))
                chain = None
                break
            chain.append(value.seconds)
        if chain is not None and any(b < a for a, b in zip(chain, chain[1:])):
            out.append(Violation("NON_MONOTONE", f"package {pid} timestamps are not monotone"))

    return out
