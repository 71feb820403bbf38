"""Per-package stage decomposition.

The six stages partition a package's life from its supplier's
discharge_start to its final placement, so their sum telescopes to
fl_placement_end - discharge_start exactly.
"""

from __future__ import annotations

from enum import Enum

from wareflow.errors import IncompleteTrace
from wareflow.sim.log import EventLog, PackageTrace


class StageId(Enum):
    WaitToWorker = "WaitToWorker"
    WorkerCarry = "WorkerCarry"
    WaitAtWaitingPoint = "WaitAtWaitingPoint"
    AgvTransport = "AgvTransport"
    WaitForForklift = "WaitForForklift"
    ForkliftPlacement = "ForkliftPlacement"


STAGE_ORDER = tuple(StageId)


def trace_stage_times(trace: PackageTrace, discharge_start: float) -> dict[StageId, float]:
    return {
        StageId.WaitToWorker: trace.worker_pick_up_start - discharge_start,
        StageId.WorkerCarry: trace.worker_pick_up_end - trace.worker_pick_up_start,
        StageId.WaitAtWaitingPoint: trace.agv_journey_start - trace.worker_pick_up_end,
        StageId.AgvTransport: trace.agv_journey_end - trace.agv_journey_start,
        StageId.WaitForForklift: trace.fl_placement_start - trace.agv_journey_end,
        StageId.ForkliftPlacement: trace.fl_placement_end - trace.fl_placement_start,
    }


def stage_times(log: EventLog) -> dict[str, dict[StageId, float]]:
    """Map package_id to its six stage durations."""
    discharge_starts = {r.supplier_id: r.discharge_start for r in log.supplier_records}
    out: dict[str, dict[StageId, float]] = {}
    for trace in log.packages:
        if trace.supplier_id not in discharge_starts:
            raise IncompleteTrace(f"{trace.package_id}: no supplier record for {trace.supplier_id}")
        out[trace.package_id] = trace_stage_times(trace, discharge_starts[trace.supplier_id])
    return out
