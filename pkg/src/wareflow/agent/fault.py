"""Fault-injection providers for retry-bound and pass@k testing."""

from __future__ import annotations

from typing import Optional, Sequence, Union

from wareflow.agent.provider import EvidenceItem, PlanStep, SubQuestion, Sufficient
from wareflow.sim.rng import SplitMix64


class BadThenGoodPlanner:
    """Emits ``bad_queries`` malformed queries per step before delegating.

    Exercises the self-reflection bound: a step succeeds on attempt
    bad_queries + 1 when that is within the retry budget.
    """

    name = "bad-then-good"

    def __init__(self, inner, bad_queries: int):
        self.inner = inner
        self.bad_queries = bad_queries
        self._failures: dict[tuple, int] = {}

    def classify_hint(self, question: str) -> Optional[str]:
        return self.inner.classify_hint(question)

    def plan(self, question: str, schema) -> list[PlanStep]:
        return self.inner.plan(question, schema)

    def to_query(self, step: PlanStep, schema, prior_results: Sequence[EvidenceItem], last_error=None) -> str:
        key = (step.index, step.intent)
        emitted = self._failures.get(key, 0)
        if emitted < self.bad_queries:
            self._failures[key] = emitted + 1
            return f"MATCH (broken syntax attempt {emitted + 1}"
        return self.inner.to_query(step, schema, prior_results, last_error)

    def next_subquestion(self, main_question: str, evidence, schema) -> Union[SubQuestion, Sufficient]:
        return self.inner.next_subquestion(main_question, evidence, schema)

    def summarize(self, question: str, evidence) -> str:
        return self.inner.summarize(question, evidence)


class FaultInjectionPlanner:
    """Fails whole attempts independently at a fixed rate.

    ``begin_attempt`` draws once per attempt from a seeded stream; during a
    failing attempt every generated query is malformed, so the attempt ends
    in STEP_EXHAUSTED and scores as incorrect. Used by the pass@k harness.
    """

    name = "fault"

    def __init__(self, inner, failure_rate: float, seed: int = 0):
        if not 0.0 <= failure_rate <= 1.0:
            raise ValueError("failure_rate must be within [0, 1]")
        self.inner = inner
        self.failure_rate = failure_rate
        self._rng = SplitMix64(seed)
        self._failing = False

    def begin_attempt(self) -> None:
        self._failing = self._rng.next_float() < self.failure_rate

    def classify_hint(self, question: str) -> Optional[str]:
        return self.inner.classify_hint(question)

    def plan(self, question: str, schema) -> list[PlanStep]:
        return self.inner.plan(question, schema)

    def to_query(self, step: PlanStep, schema, prior_results: Sequence[EvidenceItem], last_error=None) -> str:
        if self._failing:
            return "MATCH (this attempt is doomed"
        return self.inner.to_query(step, schema, prior_results, last_error)

    def next_subquestion(self, main_question: str, evidence, schema) -> Union[SubQuestion, Sufficient]:
        return self.inner.next_subquestion(main_question, evidence, schema)

    def summarize(self, question: str, evidence) -> str:
        return self.inner.summarize(question, evidence)
