"""Operational QA chain: plan, generate, execute with self-reflection,
synthesize."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from wareflow.agent.provider import EvidenceItem, PlanStep
from wareflow.agent.schema import GraphSchema
from wareflow.cypher import evaluate_query, parse_query
from wareflow.cypher.evaluator import ResultTable
from wareflow.errors import StepExhausted, WareflowError
from wareflow.graph.store import PropertyGraph
from wareflow.graph.values import DateTime

DEFAULT_MAX_RETRIES = 3


@dataclass
class QAResult:
    question: str
    answer_text: str
    structured: object
    evidence: list[EvidenceItem] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "answer_text": self.answer_text,
            "structured": self.structured,
            "evidence": [e.to_dict() for e in self.evidence],
        }


def run_qa_chain(
    question: str,
    graph: PropertyGraph,
    provider,
    max_retries: int = DEFAULT_MAX_RETRIES,
    schema: Optional[GraphSchema] = None,
) -> QAResult:
    """Execute the plan step by step; parse or evaluation errors are fed
    back to the provider until the step succeeds or ``max_retries`` total
    attempts are spent."""
    schema = schema or GraphSchema.from_graph(graph)
    steps = provider.plan(question, schema)
    evidence: list[EvidenceItem] = []
    for step in steps:
        item = _run_step(step, graph, schema, provider, evidence, max_retries)
        evidence.append(item)
    structured = _fold_results(steps, evidence)
    answer_text = provider.summarize(question, evidence)
    return QAResult(question=question, answer_text=answer_text, structured=structured, evidence=evidence)


def _run_step(
    step: PlanStep,
    graph: PropertyGraph,
    schema: GraphSchema,
    provider,
    prior: Sequence[EvidenceItem],
    max_retries: int,
) -> EvidenceItem:
    last_error: Optional[str] = None
    for attempt in range(1, max_retries + 1):
        query_text = provider.to_query(step, schema, prior, last_error)
        try:
            table = evaluate_query(parse_query(query_text), graph)
        except WareflowError as err:
            last_error = str(err)
            continue
        return EvidenceItem(
            sub_question=step.intent,
            plan=step.intent,
            query_text=query_text,
            result=table,
            summary=_summarize_table(table),
            attempt_count=attempt,
        )
    raise StepExhausted(step.index, last_error or "no query produced", evidence=list(prior))


def _summarize_table(table: ResultTable, limit: int = 3) -> str:
    def fmt(value):
        if isinstance(value, DateTime):
            return value.iso()
        if isinstance(value, float):
            return f"{value:.2f}"
        return str(value)

    shown = [", ".join(f"{c}={fmt(v)}" for c, v in zip(table.columns, row)) for row in table.rows[:limit]]
    suffix = "" if len(table.rows) <= limit else f" (+{len(table.rows) - limit} more rows)"
    return "; ".join(shown) + suffix if shown else "no rows"


# result folding into oracle-comparable structures

def _canonical_key(value) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def _plain(value):
    if isinstance(value, DateTime):
        return value.seconds
    if isinstance(value, list):
        return [_plain(v) for v in value]
    return value


def fold_table(table: ResultTable, shape: str):
    """Fold per the step's shape directive; see the registry for shapes."""
    columns = table.columns
    if shape.startswith("scalar:"):
        column = shape.split(":", 1)[1]
        idx = columns.index(column)
        return _plain(table.rows[0][idx]) if table.rows else None
    if shape == "record:*":
        if not table.rows:
            return None
        return {c: _plain(v) for c, v in zip(columns, table.rows[0])}
    if shape.startswith("map:"):
        spec = shape.split(":", 1)[1]
        key_col, value_col = spec.split("->", 1)
        key_idx = columns.index(key_col)
        if value_col == "*":
            return {
                _canonical_key(row[key_idx]): {c: _plain(v) for c, v in zip(columns, row) if c != key_col}
                for row in table.rows
            }
        value_idx = columns.index(value_col)
        return {_canonical_key(row[key_idx]): _plain(row[value_idx]) for row in table.rows}
    if shape.startswith("ranked:"):
        spec = shape.split(":", 1)[1]
        key_col, value_col = spec.split(",", 1)
        key_idx, value_idx = columns.index(key_col), columns.index(value_col)
        return [[_plain(row[key_idx]), _plain(row[value_idx])] for row in table.rows]
    if shape.startswith("list:"):
        column = shape.split(":", 1)[1]
        idx = columns.index(column)
        return [_plain(row[idx]) for row in table.rows]
    # "rows" and anything unrecognized: raw row dicts
    return [dict(zip(columns, (_plain(v) for v in row))) for row in table.rows]


def _fold_results(steps: Sequence[PlanStep], evidence: Sequence[EvidenceItem]):
    folded = []
    for step, item in zip(steps, evidence):
        shape = step.shape() or "rows"
        folded.append(fold_table(item.result, shape) if item.result is not None else None)
    if len(folded) == 1:
        return folded[0]
    if all(isinstance(f, dict) for f in folded):
        merged: dict = {}
        for piece in folded:
            merged.update(piece)
        return merged
    return folded
