"""pass@k evaluation of the question pipeline against the oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from wareflow.agent.chain import run_qa_chain
from wareflow.agent.schema import GraphSchema
from wareflow.analytics.questions import CANONICAL_QUESTIONS, answer_canonical
from wareflow.errors import WareflowError
from wareflow.graph.store import PropertyGraph
from wareflow.sim.log import EventLog

DEFAULT_FLOAT_RTOL = 1e-6


def values_match(ours, oracle, rtol: float = DEFAULT_FLOAT_RTOL) -> bool:
    """Structural comparison: exact ids/counts/strings, tolerant floats."""
    if isinstance(ours, bool) or isinstance(oracle, bool):
        return isinstance(ours, bool) and isinstance(oracle, bool) and ours == oracle
    if ours is None or oracle is None:
        return ours is None and oracle is None
    if isinstance(ours, (int, float)) and isinstance(oracle, (int, float)):
        if isinstance(ours, int) and isinstance(oracle, int):
            return ours == oracle
        return math.isclose(ours, oracle, rel_tol=rtol, abs_tol=1e-9)
    if isinstance(ours, dict) and isinstance(oracle, dict):
        if set(ours) != set(oracle):
            return False
        return all(values_match(ours[k], oracle[k], rtol) for k in oracle)
    if isinstance(ours, (list, tuple)) and isinstance(oracle, (list, tuple)):
        if len(ours) != len(oracle):
            return False
        return all(values_match(a, b, rtol) for a, b in zip(ours, oracle))
    return ours == oracle


def pass_at_k(n: int, c: int, k: int) -> float:
    """Unbiased estimator 1 - C(n-c, k) / C(n, k)."""
    if k > n:
        raise ValueError(f"k={k} exceeds attempts n={n}")
    if n - c < k:
        return 1.0
    return 1.0 - math.comb(n - c, k) / math.comb(n, k)


@dataclass
class QuestionScore:
    question_id: str
    category: str
    attempts: int
    correct: int
    pass_at: dict[int, float]

    def to_dict(self) -> dict:
        return {
            "question_id": self.question_id,
            "category": self.category,
            "attempts": self.attempts,
            "correct": self.correct,
            "pass_at": {str(k): v for k, v in self.pass_at.items()},
        }


@dataclass
class EvalReport:
    questions: list[QuestionScore]
    k_list: tuple[int, ...]

    def category_averages(self) -> dict[str, dict[int, float]]:
        buckets: dict[str, list[QuestionScore]] = {}
        for score in self.questions:
            buckets.setdefault(score.category, []).append(score)
        return {
            category: {k: sum(s.pass_at[k] for s in scores) / len(scores) for k in self.k_list}
            for category, scores in sorted(buckets.items())
        }

    def overall(self) -> dict[int, float]:
        if not self.questions:
            return {k: 0.0 for k in self.k_list}
        return {k: sum(s.pass_at[k] for s in self.questions) / len(self.questions) for k in self.k_list}

    def to_dict(self) -> dict:
        return {
            "k_list": list(self.k_list),
            "questions": [s.to_dict() for s in self.questions],
            "category_averages": {
                cat: {str(k): v for k, v in avgs.items()} for cat, avgs in self.category_averages().items()
            },
            "overall": {str(k): v for k, v in self.overall().items()},
        }


def eval_pass_at_k(
    log: EventLog,
    graph: PropertyGraph,
    provider,
    attempts: int,
    k_list: tuple[int, ...] = (1, 2),
    rtol: float = DEFAULT_FLOAT_RTOL,
    max_retries: int = 3,
) -> EvalReport:
    """Run every canonical question ``attempts`` independent times; an
    attempt is correct when its structured values match the oracle. Failed
    attempts score as incorrect and never abort the harness."""
    if attempts < max(k_list):
        raise ValueError(f"attempts ({attempts}) must be >= max k ({max(k_list)})")
    schema = GraphSchema.from_graph(graph)
    scores = []
    for question in CANONICAL_QUESTIONS:
        oracle = answer_canonical(question.question_id, log)
        correct = 0
        for _ in range(attempts):
            begin = getattr(provider, "begin_attempt", None)
            if begin is not None:
                begin()
            try:
                result = run_qa_chain(question.text, graph, provider, max_retries=max_retries, schema=schema)
            except WareflowError:
                continue
            if values_match(result.structured, oracle, rtol):
                correct += 1
        scores.append(
            QuestionScore(
                question_id=question.question_id,
                category=question.category,
                attempts=attempts,
                correct=correct,
                pass_at={k: pass_at_k(attempts, correct, k) for k in k_list},
            )
        )
    return EvalReport(questions=scores, k_list=tuple(k_list))
