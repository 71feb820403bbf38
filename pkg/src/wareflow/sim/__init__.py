"""Deterministic discrete-event simulation of the unloading-to-storage flow."""

from wareflow.sim.config import (
    DegradedForklift,
    Layout,
    ScenarioSpec,
    SimConfig,
    StageTransferDelay,
    SupplierProcessingDelay,
    Violation,
    apply_scenario,
    default_config,
    travel_time,
    validate_config,
)
from wareflow.sim.engine import run_simulation
from wareflow.sim.log import EventLog, PackageTrace, SupplierRecord, export_log, export_traces_csv, import_log

__all__ = [
    "DegradedForklift",
    "EventLog",
    "Layout",
    "PackageTrace",
    "ScenarioSpec",
    "SimConfig",
    "StageTransferDelay",
    "SupplierProcessingDelay",
    "SupplierRecord",
    "Violation",
    "apply_scenario",
    "default_config",
    "export_log",
    "export_traces_csv",
    "import_log",
    "run_simulation",
    "travel_time",
    "validate_config",
]
