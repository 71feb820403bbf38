"""HTTP service, persistence, CLI, and the evaluation harness."""

from wareflow.service.evalharness import EvalReport, eval_pass_at_k, pass_at_k, values_match
from wareflow.service.providers import resolve_provider
from wareflow.service.runs import RunRecord, RunStore, new_run_id

__all__ = [
    "EvalReport",
    "RunRecord",
    "RunStore",
    "eval_pass_at_k",
    "new_run_id",
    "pass_at_k",
    "resolve_provider",
    "values_match",
]
