"""Graph persistence: versioned JSONL and a Cypher CREATE script."""

from __future__ import annotations

import io
import json

from wareflow.errors import ParseFailure, ValidationFailed
from wareflow.graph.store import EdgeRecord, KEY_PROPERTY, NodeRecord, PropertyGraph, canonical_order, validate_graph
from wareflow.graph.values import cypher_literal, value_from_json, value_to_json

GRAPH_FORMAT = "wareflow-graph"
GRAPH_VERSION = 1


def export_graph_jsonl(graph: PropertyGraph) -> bytes:
    nodes, edges = canonical_order(graph)
    buf = io.StringIO()
    header = {
        "kind": "header",
        "format": GRAPH_FORMAT,
        "version": GRAPH_VERSION,
        "nodes": len(nodes),
        "edges": len(edges),
    }
    buf.write(json.dumps(header, separators=(",", ":"), sort_keys=True))
    buf.write("\n")
    for node in nodes:
        record = {
            "kind": "node",
            "label": node.label,
            "key": node.key,
            "props": {k: value_to_json(v) for k, v in sorted(node.props.items())},
        }
        buf.write(json.dumps(record, separators=(",", ":"), sort_keys=True))
        buf.write("\n")
    for edge in edges:
        record = {
            "kind": "edge",
            "type": edge.type,
            "src": list(edge.src),
            "dst": list(edge.dst),
            "props": {k: value_to_json(v) for k, v in sorted(edge.props.items())},
        }
        buf.write(json.dumps(record, separators=(",", ":"), sort_keys=True))
        buf.write("\n")
    return buf.getvalue().encode("utf-8")


def import_graph_jsonl(data: bytes) -> PropertyGraph:
    lines = data.decode("utf-8").splitlines()
    if not lines:
        raise ParseFailure("empty stream, missing header", line=1)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"header is not valid JSON: {exc}", line=1) from exc
    if not isinstance(header, dict) or header.get("format") != GRAPH_FORMAT:
        raise ParseFailure("header does not declare the graph format", line=1)
    nodes: list[NodeRecord] = []
    edges: list[EdgeRecord] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            kind = record["kind"]
            if kind == "node":
                nodes.append(
                    NodeRecord(
                        label=record["label"],
                        key=record["key"],
                        props={k: value_from_json(v) for k, v in record["props"].items()},
                    )
                )
            elif kind == "edge":
                edges.append(
                    EdgeRecord(
                        type=record["type"],
                        src=tuple(record["src"]),
                        dst=tuple(record["dst"]),
                        props={k: value_from_json(v) for k, v in record["props"].items()},
                    )
                )
            else:
                raise ValueError(f"unknown record kind {kind!r}")
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ParseFailure(f"bad graph record: {exc}", line=lineno) from exc
    declared = header.get("nodes"), header.get("edges")
    if declared != (None, None) and declared != (len(nodes), len(edges)):
        raise ParseFailure(
            f"header declares {declared[0]} nodes / {declared[1]} edges, stream has {len(nodes)} / {len(edges)}",
            line=1,
        )
    graph = PropertyGraph(nodes, edges)
    violations = validate_graph(graph)
    if violations:
        raise ValidationFailed(violations)
    return graph


def export_graph_cypher(graph: PropertyGraph) -> bytes:
    """CREATE statements loadable by an external Cypher database.

    Nodes first (one CREATE per node), then one MATCH+CREATE per edge keyed
    on the endpoint id properties.
    """
    nodes, edges = canonical_order(graph)
    out: list[str] = []
    for node in nodes:
        props = ", ".join(f"{k}: {cypher_literal(v)}" for k, v in sorted(node.props.items()))
        out.append(f"CREATE (:{node.label} {{{props}}});")
    for edge in edges:
        src_key = KEY_PROPERTY[edge.src[0]]
        dst_key = KEY_PROPERTY[edge.dst[0]]
        props = ", ".join(f"{k}: {cypher_literal(v)}" for k, v in sorted(edge.props.items()))
        out.append(
            f"MATCH (a:{edge.src[0]} {{{src_key}: {cypher_literal(edge.src[1])}}}), "
            f"(b:{edge.dst[0]} {{{dst_key}: {cypher_literal(edge.dst[1])}}}) "
            f"CREATE (a)-[:{edge.type} {{{props}}}]->(b);"
        )
    return ("\n".join(out) + "\n").encode("utf-8")


def export_graph(graph: PropertyGraph, format: str = "jsonl") -> bytes:
    if format == "jsonl":
        return export_graph_jsonl(graph)
    if format == "cypher-script":
        return export_graph_cypher(graph)
    raise ValueError(f"unknown graph export format {format!r}")


def import_graph(data: bytes, format: str = "jsonl") -> PropertyGraph:
    if format != "jsonl":
        raise ValueError(f"unknown graph import format {format!r}")
    return import_graph_jsonl(data)
