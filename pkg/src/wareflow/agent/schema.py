"""Schema descriptor handed to planners: labels, edge types, known ids."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from wareflow.graph.store import EDGE_REQUIRED_PROPS, KEY_PROPERTY, PropertyGraph


@dataclass(frozen=True)
class GraphSchema:
    labels: tuple[str, ...]
    edge_types: tuple[str, ...]
    supplier_ids: tuple[str, ...]
    worker_ids: tuple[str, ...]
    agv_ids: tuple[str, ...]
    forklift_ids: tuple[str, ...]
    block_ids: tuple[str, ...]

    @classmethod
    def from_graph(cls, graph: PropertyGraph) -> "GraphSchema":
        def keys(label: str) -> tuple[str, ...]:
            return tuple(sorted(n.key for n in graph.nodes_by_label.get(label, [])))

        return cls(
            labels=tuple(KEY_PROPERTY),
            edge_types=tuple(EDGE_REQUIRED_PROPS),
            supplier_ids=keys("SUPPLIER"),
            worker_ids=keys("WORKER"),
            agv_ids=keys("AGV"),
            forklift_ids=keys("FL"),
            block_ids=keys("STORAGE"),
        )

    def describe(self) -> str:
        """Prompt-friendly one-screen summary."""
        lines = ["Node labels and key properties:"]
        for label in self.labels:
            lines.append(f"  ({label} {{{KEY_PROPERTY[label]}}})")
        lines.append("Relationship types and properties:")
        for etype in self.edge_types:
            lines.append(f"  [:{etype} {{{', '.join(EDGE_REQUIRED_PROPS[etype])}}}]")
        lines.append(f"Suppliers: {', '.join(self.supplier_ids)}")
        lines.append(f"Forklifts: {', '.join(self.forklift_ids)}")
        lines.append(f"AGVs: {', '.join(self.agv_ids)}")
        return "\n".join(lines)

    # entity extraction from free-text questions

    def find_supplier(self, question: str):
        lowered = question.lower()
        for supplier in self.supplier_ids:
            if supplier.lower() in lowered:
                return supplier
        return None

    def find_agv(self, question: str):
        match = re.search(r"\bagv[\s_]*(\d+)\b", question, re.IGNORECASE)
        if match:
            candidate = f"AGV_{int(match.group(1)):02d}"
            if candidate in self.agv_ids:
                return candidate
        return None

    def find_forklift(self, question: str):
        match = re.search(r"\b(?:fork\s*lift|forklift|fl)[\s_]*(\d+)\b", question, re.IGNORECASE)
        if match:
            candidate = f"FL_{int(match.group(1)):02d}"
            if candidate in self.forklift_ids:
                return candidate
        return None
