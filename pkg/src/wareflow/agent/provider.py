"""Planner provider protocol and the structures flowing through it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence, Union

from wareflow.cypher.evaluator import ResultTable


@dataclass(frozen=True)
class PlanStep:
    """One decomposed analytical step, sized for a single query.

    ``required_entities`` carries machine bindings as "key=value" strings
    (template id, extracted resource ids); ``expected_output`` is a
    description, optionally prefixed with a "shape=..." directive the chain
    uses to fold the result into structured values.
    """

    index: int
    intent: str
    required_entities: tuple[str, ...] = ()
    expected_output: str = ""

    def binding(self, key: str) -> Optional[str]:
        prefix = f"{key}="
        for entry in self.required_entities:
            if entry.startswith(prefix):
                return entry[len(prefix):]
        return None

    def shape(self) -> Optional[str]:
        if self.expected_output.startswith("shape="):
            return self.expected_output.split(";", 1)[0][len("shape="):].strip()
        return None


@dataclass(frozen=True)
class SubQuestion:
    text: str


@dataclass(frozen=True)
class Sufficient:
    summary: str


@dataclass
class EvidenceItem:
    """One gathered piece of evidence: the four-column trace row."""

    sub_question: str
    plan: str
    query_text: str
    result: Optional[ResultTable]
    summary: str
    attempt_count: int = 1
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "sub_question": self.sub_question,
            "plan": self.plan,
            "query_text": self.query_text,
            "result": self.result.to_dict() if self.result is not None else None,
            "summary": self.summary,
            "attempt_count": self.attempt_count,
            "error": self.error,
        }


class PlannerProvider(Protocol):
    """Stateless planning surface; evidence travels through arguments."""

    name: str

    def classify_hint(self, question: str) -> Optional[str]:
        """'operational' | 'investigative' | None when undecided."""
        ...

    def plan(self, question: str, schema) -> list[PlanStep]:
        ...

    def to_query(self, step: PlanStep, schema, prior_results: Sequence[EvidenceItem], last_error: Optional[str] = None) -> str:
        ...

    def next_subquestion(self, main_question: str, evidence: Sequence[EvidenceItem], schema) -> Union[SubQuestion, Sufficient]:
        ...

    def summarize(self, question: str, evidence: Sequence[EvidenceItem]) -> str:
        ...
