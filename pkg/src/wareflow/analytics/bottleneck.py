"""Stage-deviation and utilization diagnostics for one subject."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from wareflow.analytics.metrics import resource_utilization
from wareflow.analytics.stages import STAGE_ORDER, StageId, stage_times
from wareflow.errors import UnknownResource
from wareflow.sim.log import EventLog


@dataclass(frozen=True)
class StageDeviation:
    stage: StageId
    subject_mean: float
    global_mean: float
    ratio: Optional[float]

    def to_dict(self) -> dict:
        return {
            "stage": self.stage.value,
            "subject_mean": self.subject_mean,
            "global_mean": self.global_mean,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class UtilizationComparison:
    resource_class: str
    subject_utilization: Optional[float]
    global_utilization: Optional[float]

    def to_dict(self) -> dict:
        return {
            "resource_class": self.resource_class,
            "subject_utilization": self.subject_utilization,
            "global_utilization": self.global_utilization,
        }


@dataclass(frozen=True)
class BottleneckReport:
    subject: str
    subject_kind: str
    stages: tuple[StageDeviation, ...]
    utilization: tuple[UtilizationComparison, ...]
    verdict: StageId

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "subject_kind": self.subject_kind,
            "stages": [s.to_dict() for s in self.stages],
            "utilization": [u.to_dict() for u in self.utilization],
            "verdict": self.verdict.value,
        }


def bottleneck_report(log: EventLog, subject: str) -> BottleneckReport:
    """Per-stage deviation table and utilization comparison for a supplier
    or forklift; the verdict is the stage with the highest subject-to-global
    ratio, ties resolved in stage order.
    """
    supplier_ids = {r.supplier_id for r in log.supplier_records}
    forklift_ids = {t.forklift_id for t in log.packages}
    if subject in supplier_ids:
        kind = "supplier"
        subject_packages = {t.package_id for t in log.packages if t.supplier_id == subject}
    elif subject in forklift_ids:
        kind = "forklift"
        subject_packages = {t.package_id for t in log.packages if t.forklift_id == subject}
    else:
        raise UnknownResource(f"subject {subject!r} is neither a supplier nor a forklift in this log")

    per_package = stage_times(log)
    deviations = []
    for stage in STAGE_ORDER:
        subject_values = [per_package[p][stage] for p in per_package if p in subject_packages]
        global_values = [stages[stage] for stages in per_package.values()]
        subject_mean = sum(subject_values) / len(subject_values) if subject_values else 0.0
        global_mean = sum(global_values) / len(global_values) if global_values else 0.0
        ratio = (subject_mean / global_mean) if global_mean > 0 else None
        deviations.append(StageDeviation(stage, subject_mean, global_mean, ratio))

    comparisons = []
    if kind == "supplier":
        for resource_class in ("AGV", "FL", "WORKER"):
            scoped = resource_utilization(log, resource_class, scope=subject)
            overall = resource_utilization(log, resource_class)
            comparisons.append(
                UtilizationComparison(resource_class, scoped.global_average, overall.global_average)
            )
    else:
        overall = resource_utilization(log, "FL")
        comparisons.append(
            UtilizationComparison("FL", overall.per_entity.get(subject), overall.global_average)
        )

    best = max(
        (d for d in deviations if d.ratio is not None),
        key=lambda d: (d.ratio, -STAGE_ORDER.index(d.stage)),
        default=deviations[0],
    )
    return BottleneckReport(
        subject=subject,
        subject_kind=kind,
        stages=tuple(deviations),
        utilization=tuple(comparisons),
        verdict=best.stage,
    )
