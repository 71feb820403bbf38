"""Ground-truth analytics computed straight from the event log."""

from wareflow.analytics.stages import StageId, stage_times
from wareflow.analytics.metrics import (
    MetricReport,
    resource_utilization,
    supplier_metrics,
)
from wareflow.analytics.bottleneck import BottleneckReport, StageDeviation, UtilizationComparison, bottleneck_report
from wareflow.analytics.questions import (
    CANONICAL_QUESTIONS,
    CanonicalQuestion,
    answer_canonical,
    question_by_id,
)

__all__ = [
    "BottleneckReport",
    "CANONICAL_QUESTIONS",
    "CanonicalQuestion",
    "MetricReport",
    "StageDeviation",
    "StageId",
    "UtilizationComparison",
    "answer_canonical",
    "bottleneck_report",
    "question_by_id",
    "resource_utilization",
    "stage_times",
    "supplier_metrics",
]
