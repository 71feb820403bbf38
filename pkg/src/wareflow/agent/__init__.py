"""Dual-path question pipeline over a pluggable planner provider."""

from wareflow.agent.chain import QAResult, fold_table, run_qa_chain
from wareflow.agent.classify import INVESTIGATIVE, OPERATIONAL, classify_query
from wareflow.agent.fault import BadThenGoodPlanner, FaultInjectionPlanner
from wareflow.agent.investigation import (
    InvestigationTrace,
    InvestigationVerdict,
    RulePolicy,
    assess_sufficiency,
    run_investigation,
)
from wareflow.agent.provider import EvidenceItem, PlannerProvider, PlanStep, SubQuestion, Sufficient
from wareflow.agent.rule_planner import RulePlanner
from wareflow.agent.schema import GraphSchema

__all__ = [
    "BadThenGoodPlanner",
    "EvidenceItem",
    "FaultInjectionPlanner",
    "GraphSchema",
    "INVESTIGATIVE",
    "InvestigationTrace",
    "InvestigationVerdict",
    "OPERATIONAL",
    "PlanStep",
    "PlannerProvider",
    "QAResult",
    "RulePlanner",
    "RulePolicy",
    "SubQuestion",
    "Sufficient",
    "assess_sufficiency",
    "classify_query",
    "fold_table",
    "run_investigation",
    "run_qa_chain",
]
