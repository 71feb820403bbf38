"""Property knowledge graph: schema, construction, validation, interchange."""

from wareflow.graph.build import build_graph
from wareflow.graph.io import export_graph, export_graph_cypher, export_graph_jsonl, import_graph, import_graph_jsonl
from wareflow.graph.store import (
    EDGE_TYPES,
    NODE_LABELS,
    EdgeRecord,
    NodeRecord,
    PropertyGraph,
    canonical_order,
    validate_graph,
)
from wareflow.graph.values import DateTime, Value

__all__ = [
    "DateTime",
    "EDGE_TYPES",
    "EdgeRecord",
    "NODE_LABELS",
    "NodeRecord",
    "PropertyGraph",
    "Value",
    "build_graph",
    "canonical_order",
    "export_graph",
    "export_graph_cypher",
    "export_graph_jsonl",
    "import_graph",
    "import_graph_jsonl",
    "validate_graph",
]
