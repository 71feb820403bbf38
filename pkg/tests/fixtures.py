"""Hand-built logs with known-by-construction analytics answers."""

from __future__ import annotations

from wareflow.sim import default_config
from wareflow.sim.log import EventLog, PackageTrace, SupplierRecord, busy_intervals_from_traces


def make_trace(
    package_id: str,
    supplier_id: str = "AuroraFarms",
    worker_id: str = "BW_00",
    agv_id: str = "AGV_00",
    forklift_id: str = "FL_00",
    block_id: str = "A",
    bay: int = 0,
    shelf: int = 0,
    times: tuple[float, ...] = (0.0, 0.0, 10.0, 20.0, 30.0, 30.0, 40.0, 50.0, 60.0),
) -> PackageTrace:
    (arr, ds, wps, wpe, aa, ajs, aje, fps, fpe) = times
    return PackageTrace(
        package_id=package_id,
        supplier_id=supplier_id,
        worker_id=worker_id,
        agv_id=agv_id,
        forklift_id=forklift_id,
        block_id=block_id,
        bay=bay,
        shelf=shelf,
        supplier_arrival=arr,
        discharge_start=ds,
        worker_pick_up_start=wps,
        worker_pick_up_end=wpe,
        agv_arrival=aa,
        agv_journey_start=ajs,
        agv_journey_end=aje,
        fl_placement_start=fps,
        fl_placement_end=fpe,
    )


def make_log(traces, records) -> EventLog:
    packages = tuple(traces)
    return EventLog(
        config_snapshot=default_config(),
        packages=packages,
        supplier_records=tuple(records),
        resource_busy_intervals=busy_intervals_from_traces(packages),
    )


def two_supplier_log() -> EventLog:
    """Two suppliers, three packages, every duration chosen by hand.

    AuroraFarms (docked at t=0 after arriving at t=0):
      PKG_A_0: stages 10/10/10/10/10/10 -> ends at 60
      PKG_A_1: pickup at 30, carry 10, waits 5, rides 10, waits 5, places 10 -> ends 70
    BlackSheepDist (arrives 0, docked at 100):
      PKG_B_0: stages 20/10/0/10/0/30 -> ends at 170
    """
    aurora_0 = make_trace("PKG_A_0", "AuroraFarms", "BW_00", "AGV_00", "FL_00", "A", 0, 0, (0, 0, 10, 20, 30, 30, 40, 50, 60))
    aurora_1 = make_trace("PKG_A_1", "AuroraFarms", "BW_01", "AGV_01", "FL_01", "B", 0, 0, (0, 0, 30, 40, 45, 45, 55, 60, 70))
    black_0 = make_trace("PKG_B_0", "BlackSheepDist", "BW_04", "AGV_00", "FL_00", "A", 0, 1, (0, 100, 120, 130, 130, 130, 140, 140, 170))
    return make_log(
        [aurora_0, aurora_1, black_0],
        [
            SupplierRecord("AuroraFarms", 0.0, 0.0, 40.0),
            SupplierRecord("BlackSheepDist", 0.0, 100.0, 130.0),
        ],
    )


def uniform_stage_log(n_packages: int = 4, stage: float = 10.0) -> EventLog:
    """Every stage of every package lasts exactly ``stage`` seconds.

    Packages are staggered 100 s apart, each under its own supplier so the
    wait-to-worker stage (measured from the supplier's discharge_start)
    also equals ``stage``.
    """
    traces = []
    records = []
    for i in range(n_packages):
        offset = i * 100.0
        supplier = f"Supplier{i}"
        t = [offset, offset, offset + stage, offset + 2 * stage, offset + 3 * stage,
             offset + 3 * stage, offset + 4 * stage, offset + 5 * stage, offset + 6 * stage]
        traces.append(
            make_trace(
                f"PKG_U_{i}",
                supplier_id=supplier,
                worker_id=f"BW_{i % 4:02d}",
                agv_id=f"AGV_{i % 2:02d}",
                forklift_id="FL_00",
                block_id="A",
                bay=i,
                shelf=0,
                times=tuple(t),
            )
        )
        records.append(SupplierRecord(supplier, offset, offset, offset + 2 * stage))
    return make_log(traces, records)
