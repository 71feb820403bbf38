"""Event log data model and its JSONL / CSV serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from wareflow.errors import ParseFailure
from wareflow.sim.config import SimConfig

LOG_FORMAT = "wareflow-log"
LOG_VERSION = 1

# Anchor used when timestamps are rendered as ISO-8601 wall-clock values.
DEFAULT_EPOCH = datetime(2024, 1, 1, 8, 0, 0, tzinfo=timezone.utc)

TIMESTAMP_FIELDS = (
    "supplier_arrival",
    "discharge_start",
    "worker_pick_up_start",
    "worker_pick_up_end",
    "agv_arrival",
    "agv_journey_start",
    "agv_journey_end",
    "fl_placement_start",
    "fl_placement_end",
)


def iso_render(seconds: float, epoch: datetime = DEFAULT_EPOCH) -> str:
    return (epoch + timedelta(seconds=seconds)).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class PackageTrace:
    """One package's identity chain and nine-stage timestamp chain."""

    package_id: str
    supplier_id: str
    worker_id: str
    agv_id: str
    forklift_id: str
    block_id: str
    bay: int
    shelf: int
    supplier_arrival: float
    discharge_start: float
    worker_pick_up_start: float
    worker_pick_up_end: float
    agv_arrival: float
    agv_journey_start: float
    agv_journey_end: float
    fl_placement_start: float
    fl_placement_end: float

    def to_dict(self) -> dict:
        return {
            "package_id": self.package_id,
            "supplier_id": self.supplier_id,
            "worker_id": self.worker_id,
            "agv_id": self.agv_id,
            "forklift_id": self.forklift_id,
            "block_id": self.block_id,
            "bay": self.bay,
            "shelf": self.shelf,
            **{name: getattr(self, name) for name in TIMESTAMP_FIELDS},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PackageTrace":
        return cls(
            package_id=data["package_id"],
            supplier_id=data["supplier_id"],
            worker_id=data["worker_id"],
            agv_id=data["agv_id"],
            forklift_id=data["forklift_id"],
            block_id=data["block_id"],
            bay=int(data["bay"]),
            shelf=int(data["shelf"]),
            **{name: float(data[name]) for name in TIMESTAMP_FIELDS},
        )


@dataclass(frozen=True)
class SupplierRecord:
    supplier_id: str
    arrival_time: float
    discharge_start: float
    discharge_end: float

    def to_dict(self) -> dict:
        return {
            "supplier_id": self.supplier_id,
            "arrival_time": self.arrival_time,
            "discharge_start": self.discharge_start,
            "discharge_end": self.discharge_end,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SupplierRecord":
        return cls(
            supplier_id=data["supplier_id"],
            arrival_time=float(data["arrival_time"]),
            discharge_start=float(data["discharge_start"]),
            discharge_end=float(data["discharge_end"]),
        )


@dataclass(frozen=True)
class EventLog:
    """Immutable simulation output; the single source of truth downstream."""

    config_snapshot: SimConfig
    packages: tuple[PackageTrace, ...]
    supplier_records: tuple[SupplierRecord, ...]
    resource_busy_intervals: dict[str, tuple[tuple[float, float], ...]] = field(default_factory=dict)

    def supplier_record(self, supplier_id: str) -> SupplierRecord:
        for record in self.supplier_records:
            if record.supplier_id == supplier_id:
                return record
        raise KeyError(supplier_id)

    def packages_of(self, supplier_id: str) -> list[PackageTrace]:
        return [p for p in self.packages if p.supplier_id == supplier_id]


def busy_intervals_from_traces(packages) -> dict[str, tuple[tuple[float, float], ...]]:
    """Rebuild the per-resource busy map from the timestamp pairs.

    Workers are busy while carrying, AGVs while on the loaded journey,
    forklifts while placing; walking/driving back is unavailability, not
    busy time.
    """
    intervals: dict[str, list[tuple[float, float]]] = {}
    for trace in packages:
        intervals.setdefault(trace.worker_id, []).append((trace.worker_pick_up_start, trace.worker_pick_up_end))
        intervals.setdefault(trace.agv_id, []).append((trace.agv_journey_start, trace.agv_journey_end))
        intervals.setdefault(trace.forklift_id, []).append((trace.fl_placement_start, trace.fl_placement_end))
    return {rid: tuple(sorted(spans)) for rid, spans in intervals.items()}


def export_log(log: EventLog) -> bytes:
    """JSONL: a header line with config and supplier records, then one trace per line."""
    buf = io.StringIO()
    header = {
        "format": LOG_FORMAT,
        "version": LOG_VERSION,
        "config": log.config_snapshot.to_dict(),
        "suppliers": [r.to_dict() for r in log.supplier_records],
    }
    buf.write(json.dumps(header, separators=(",", ":"), sort_keys=True))
    buf.write("\n")
    for trace in log.packages:
        buf.write(json.dumps(trace.to_dict(), separators=(",", ":"), sort_keys=True))
        buf.write("\n")
    return buf.getvalue().encode("utf-8")


def import_log(data: bytes) -> EventLog:
    lines = data.decode("utf-8").splitlines()
    if not lines:
        raise ParseFailure("empty stream, missing header", line=1)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"header is not valid JSON: {exc}", line=1) from exc
    if not isinstance(header, dict) or header.get("format") != LOG_FORMAT:
        raise ParseFailure("header does not declare the log format", line=1)
    config = SimConfig.from_dict(header["config"])
    suppliers = tuple(SupplierRecord.from_dict(r) for r in header.get("suppliers", []))
    traces = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            traces.append(PackageTrace.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ParseFailure(f"bad trace record: {exc}", line=lineno) from exc
    packages = tuple(traces)
    return EventLog(
        config_snapshot=config,
        packages=packages,
        supplier_records=suppliers,
        resource_busy_intervals=busy_intervals_from_traces(packages),
    )


def export_traces_csv(log: EventLog, iso: bool = False) -> bytes:
    """Flat trace table for spreadsheet inspection."""
    buf = io.StringIO()
    fields = ["package_id", "supplier_id", "worker_id", "agv_id", "forklift_id", "block_id", "bay", "shelf", *TIMESTAMP_FIELDS]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for trace in log.packages:
        row = trace.to_dict()
        if iso:
            for name in TIMESTAMP_FIELDS:
                row[name] = iso_render(row[name])
        writer.writerow([row[f] for f in fields])
    return buf.getvalue().encode("utf-8")
