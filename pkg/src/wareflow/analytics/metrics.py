"""Supplier-level durations and resource utilization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from wareflow.errors import UnknownScope
from wareflow.sim.log import EventLog

RESOURCE_CLASSES = {
    "AGV": ("agv_id", "agv_journey_start", "agv_journey_end"),
    "FL": ("forklift_id", "fl_placement_start", "fl_placement_end"),
    "WORKER": ("worker_id", "worker_pick_up_start", "worker_pick_up_end"),
}


@dataclass(frozen=True)
class MetricReport:
    name: str
    units: str
    per_entity: dict[str, Optional[float]]
    global_average: Optional[float]
    population: str

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "units": self.units,
            "per_entity": dict(self.per_entity),
            "global_average": self.global_average,
            "population": self.population,
        }


def _mean(values) -> Optional[float]:
    values = [v for v in values if v is not None]
    if not values:
        return None
    return sum(values) / len(values)


def supplier_metrics(log: EventLog) -> dict[str, MetricReport]:
    """Three per-supplier durations plus their averages over suppliers.

    total_unload_time ends when the last package leaves the truck side
    (max worker_pick_up_end); total_discharge_time ends at the last
    placement; supplier_waiting_time is the dock wait before unloading.
    """
    unload: dict[str, Optional[float]] = {}
    discharge: dict[str, Optional[float]] = {}
    waiting: dict[str, Optional[float]] = {}
    for record in log.supplier_records:
        packages = log.packages_of(record.supplier_id)
        waiting[record.supplier_id] = record.discharge_start - record.arrival_time
        if packages:
            unload[record.supplier_id] = max(p.worker_pick_up_end for p in packages) - record.discharge_start
            discharge[record.supplier_id] = max(p.fl_placement_end for p in packages) - record.discharge_start
        else:
            unload[record.supplier_id] = 0.0
            discharge[record.supplier_id] = 0.0
    return {
        "total_unload_time": MetricReport("total_unload_time", "seconds", unload, _mean(unload.values()), "per-supplier"),
        "total_discharge_time": MetricReport(
            "total_discharge_time", "seconds", discharge, _mean(discharge.values()), "per-supplier"
        ),
        "supplier_waiting_time": MetricReport(
            "supplier_waiting_time", "seconds", waiting, _mean(waiting.values()), "per-supplier"
        ),
    }


def resource_utilization(log: EventLog, resource_class: str, scope: Optional[str] = None) -> MetricReport:
    """Busy seconds over the resource's own active span, per resource.

    ``scope`` restricts the busy numerator to one supplier's packages while
    the span stays the resource's full first-to-last busy range; a resource
    with no activity at all reports None.
    """
    if resource_class not in RESOURCE_CLASSES:
        raise UnknownScope(f"unknown resource class {resource_class!r}")
    if scope is not None and scope not in {r.supplier_id for r in log.supplier_records}:
        raise UnknownScope(f"unknown supplier scope {scope!r}")
    id_attr, start_attr, end_attr = RESOURCE_CLASSES[resource_class]
    spans: dict[str, list[float]] = {}
    busy: dict[str, float] = {}
    for trace in log.packages:
        rid = getattr(trace, id_attr)
        start, end = getattr(trace, start_attr), getattr(trace, end_attr)
        window = spans.setdefault(rid, [start, end])
        window[0] = min(window[0], start)
        window[1] = max(window[1], end)
        if scope is None or trace.supplier_id == scope:
            busy[rid] = busy.get(rid, 0.0) + (end - start)
    per_entity: dict[str, Optional[float]] = {}
    for rid, (first, last) in sorted(spans.items()):
        span = last - first
        per_entity[rid] = (busy.get(rid, 0.0) / span) if span > 0 else None
    name = f"{resource_class.lower()}_utilization" + (f"[{scope}]" if scope else "")
    return MetricReport(name, "fraction", per_entity, _mean(per_entity.values()), "per-entity")
