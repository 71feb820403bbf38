"""Investigative reasoning loop: sub-questions, evidence, sufficiency."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from wareflow.agent.chain import run_qa_chain
from wareflow.agent.provider import EvidenceItem, SubQuestion, Sufficient
from wareflow.agent.schema import GraphSchema
from wareflow.cypher.evaluator import ResultTable
from wareflow.errors import StepExhausted
from wareflow.graph.store import PropertyGraph

DEFAULT_BUDGET = 8


@dataclass(frozen=True)
class RulePolicy:
    """Breadth-and-depth stopping rule: evidence is sufficient once a
    stage deviation at or above the threshold exists alongside at least
    one utilization comparison."""

    stage_ratio_threshold: float = 1.2


@dataclass
class InvestigationVerdict:
    subject: Optional[str]
    subject_kind: Optional[str]
    stage: Optional[str]
    stage_ratio: Optional[float]
    min_utilization_subject: Optional[str] = None
    utilization: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "subject_kind": self.subject_kind,
            "stage": self.stage,
            "stage_ratio": self.stage_ratio,
            "min_utilization_subject": self.min_utilization_subject,
            "utilization": dict(self.utilization),
        }


@dataclass
class InvestigationTrace:
    main_question: str
    evidence: list[EvidenceItem]
    final_summary: str
    verdict: InvestigationVerdict
    budget_used: int

    def to_dict(self) -> dict:
        return {
            "main_question": self.main_question,
            "evidence": [e.to_dict() for e in self.evidence],
            "final_summary": self.final_summary,
            "verdict": self.verdict.to_dict(),
            "budget_used": self.budget_used,
        }


def _stage_ratio_rows(item: EvidenceItem):
    """Yield (stage, ratio, entity) from results shaped like deviation tables."""
    table = item.result
    if table is None:
        return
    columns = [c.lower() for c in table.columns]
    if "stage" not in columns or "ratio" not in columns:
        return
    stage_idx = columns.index("stage")
    ratio_idx = columns.index("ratio")
    entity_idx = None
    for idx, name in enumerate(columns):
        if name.endswith("_id"):
            entity_idx = idx
            break
    for row in table.rows:
        ratio = row[ratio_idx]
        if isinstance(ratio, (int, float)) and not isinstance(ratio, bool):
            entity = row[entity_idx] if entity_idx is not None else None
            yield row[stage_idx], float(ratio), entity


def _has_utilization(item: EvidenceItem) -> bool:
    table = item.result
    if table is None:
        return False
    return any("util" in c.lower() for c in table.columns)


def assess_sufficiency(evidence: Sequence[EvidenceItem], policy: RulePolicy = RulePolicy()) -> Union[Sufficient, None]:
    """Sufficient when (a) some stage ratio clears the threshold and (b) a
    utilization comparison has been gathered; otherwise continue."""
    best = None
    for item in evidence:
        for stage, ratio, _entity in _stage_ratio_rows(item):
            if best is None or ratio > best[1]:
                best = (stage, ratio)
    if best is None or best[1] < policy.stage_ratio_threshold:
        return None
    if not any(_has_utilization(item) for item in evidence):
        return None
    stage, ratio = best
    return Sufficient(f"stage {stage} deviates at {ratio:.2f}x the global average with utilization evidence gathered")


def extract_verdict(main_question: str, evidence: Sequence[EvidenceItem], schema: GraphSchema) -> InvestigationVerdict:
    """Deterministic verdict assembly from gathered evidence tables."""
    subject = schema.find_supplier(main_question)
    subject_kind = "supplier" if subject else None
    best_stage = None
    best_ratio = None
    best_entity = None
    for item in evidence:
        for stage, ratio, entity in _stage_ratio_rows(item):
            if best_ratio is None or ratio > best_ratio:
                best_stage, best_ratio, best_entity = stage, ratio, entity
    if subject is None and best_entity is not None:
        subject = str(best_entity)
        subject_kind = "forklift" if subject.startswith("FL") else "resource"

    min_util_subject = None
    utilization: dict = {}
    for item in evidence:
        table = item.result
        if table is None or not _has_utilization(item):
            continue
        columns = [c.lower() for c in table.columns]
        util_cols = [i for i, c in enumerate(columns) if "util" in c]
        entity_idx = next((i for i, c in enumerate(columns) if c.endswith("_id")), None)
        if entity_idx is not None and len(table.rows) > 1:
            # per-entity utilization table: lowest non-null value names a unit
            values = [
                (row[util_cols[0]], row[entity_idx])
                for row in table.rows
                if isinstance(row[util_cols[0]], (int, float)) and not isinstance(row[util_cols[0]], bool)
            ]
            if values:
                min_util_subject = str(sorted(values, key=lambda v: (v[0], v[1]))[0][1])
                for value, entity in values:
                    utilization[str(entity)] = value
        elif len(table.rows) == 1:
            for idx in util_cols:
                utilization[table.columns[idx]] = table.rows[0][idx]
    return InvestigationVerdict(
        subject=subject,
        subject_kind=subject_kind,
        stage=str(best_stage) if best_stage is not None else None,
        stage_ratio=best_ratio,
        min_utilization_subject=min_util_subject,
        utilization=utilization,
    )


def run_investigation(
    question: str,
    graph: PropertyGraph,
    provider,
    budget: int = DEFAULT_BUDGET,
    max_retries: int = 3,
    policy: RulePolicy = RulePolicy(),
) -> InvestigationTrace:
    """Loop sub-questions through the QA chain until the policy or the
    provider declares sufficiency, or the budget runs out. Failed steps are
    recorded in the trace without aborting the investigation."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    schema = GraphSchema.from_graph(graph)
    evidence: list[EvidenceItem] = []
    final_summary: Optional[str] = None
    while len(evidence) < budget:
        outcome = provider.next_subquestion(question, evidence, schema)
        if isinstance(outcome, Sufficient):
            final_summary = outcome.summary
            break
        sub_question = outcome.text
        try:
            qa = run_qa_chain(sub_question, graph, provider, max_retries=max_retries, schema=schema)
            merged = _merge_evidence(sub_question, qa.evidence)
            evidence.append(merged)
        except StepExhausted as err:
            evidence.append(
                EvidenceItem(
                    sub_question=sub_question,
                    plan="(failed)",
                    query_text="",
                    result=None,
                    summary=f"failed: {err.last_error}",
                    attempt_count=max_retries,
                    error=err.last_error,
                )
            )
        verdict_check = assess_sufficiency(evidence, policy)
        if verdict_check is not None:
            final_summary = verdict_check.summary
            break
    if final_summary is None:
        final_summary = f"budget exhausted after {len(evidence)} sub-questions; " + provider.summarize(question, evidence)
    verdict = extract_verdict(question, evidence, schema)
    return InvestigationTrace(
        main_question=question,
        evidence=evidence,
        final_summary=final_summary,
        verdict=verdict,
        budget_used=len(evidence),
    )


def _merge_evidence(sub_question: str, items: Sequence[EvidenceItem]) -> EvidenceItem:
    """One trace row per sub-question: single-row step results concatenate
    into one wide table, otherwise the last table stands."""
    if len(items) == 1:
        item = items[0]
        return EvidenceItem(
            sub_question=sub_question,
            plan=item.plan,
            query_text=item.query_text,
            result=item.result,
            summary=item.summary,
            attempt_count=item.attempt_count,
            error=item.error,
        )
    plans = "; ".join(i.plan for i in items)
    queries = "\n".join(i.query_text for i in items)
    attempts = max(i.attempt_count for i in items)
    tables = [i.result for i in items if i.result is not None]
    if tables and all(len(t.rows) == 1 for t in tables):
        columns: list[str] = []
        row: list = []
        for table in tables:
            columns.extend(table.columns)
            row.extend(table.rows[0])
        result = ResultTable(columns=columns, rows=[tuple(row)])
    else:
        result = tables[-1] if tables else None
    summary = "; ".join(i.summary for i in items)
    return EvidenceItem(
        sub_question=sub_question,
        plan=plans,
        query_text=queries,
        result=result,
        summary=summary,
        attempt_count=attempts,
    )
