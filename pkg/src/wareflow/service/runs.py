"""Directory-per-run persistence with ULID-style identifiers."""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from wareflow.errors import RunNotFound, WrongState
from wareflow.graph import build_graph, export_graph_jsonl, import_graph_jsonl
from wareflow.graph.store import PropertyGraph
from wareflow.sim import export_log, import_log, run_simulation
from wareflow.sim.config import SimConfig
from wareflow.sim.log import EventLog

_CROCKFORD = "0123456789ABCDEFGHJKMNPQRSTVWXYZ"


def new_run_id(now_ms: Optional[int] = None, entropy: Optional[bytes] = None) -> str:
    """26-char sortable id: 48-bit millisecond timestamp + 80 random bits."""
    ms = int(time.time() * 1000) if now_ms is None else now_ms
    entropy = os.urandom(10) if entropy is None else entropy
    value = (ms & (1 << 48) - 1) << 80 | int.from_bytes(entropy, "big")
    chars = []
    for shift in range(125, -1, -5):
        chars.append(_CROCKFORD[(value >> shift) & 0x1F])
    return "".join(chars)


@dataclass
class RunRecord:
    run_id: str
    config: SimConfig
    created_at: float
    status: str = "created"  # created -> simulated -> graphed

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "config": self.config.to_dict(),
            "created_at": self.created_at,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        return cls(
            run_id=data["run_id"],
            config=SimConfig.from_dict(data["config"]),
            created_at=float(data["created_at"]),
            status=data["status"],
        )


class RunStore:
    """Artifacts live under <root>/<run_id>/; transitions serialize behind
    one lock per run, reads are lock-free on the immutable files."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        self._log_cache: dict[str, EventLog] = {}
        self._graph_cache: dict[str, PropertyGraph] = {}

    def _lock(self, run_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(run_id, threading.Lock())

    def _dir(self, run_id: str) -> Path:
        return self.root / run_id

    def _record_path(self, run_id: str) -> Path:
        return self._dir(run_id) / "run.json"

    def create(self, config: SimConfig) -> RunRecord:
        record = RunRecord(run_id=new_run_id(), config=config, created_at=time.time())
        self._dir(record.run_id).mkdir(parents=True, exist_ok=False)
        self._write_record(record)
        return record

    def _write_record(self, record: RunRecord) -> None:
        path = self._record_path(record.run_id)
        path.write_text(json.dumps(record.to_dict(), indent=2, sort_keys=True), encoding="utf-8")

    def get(self, run_id: str) -> RunRecord:
        path = self._record_path(run_id)
        if not path.exists():
            raise RunNotFound(f"run {run_id!r} does not exist")
        return RunRecord.from_dict(json.loads(path.read_text(encoding="utf-8")))

    def list_runs(self) -> list[RunRecord]:
        records = []
        for child in sorted(self.root.iterdir()):
            if (child / "run.json").exists():
                records.append(self.get(child.name))
        return records

    def simulate(self, run_id: str, force: bool = False) -> RunRecord:
        with self._lock(run_id):
            record = self.get(run_id)
            if record.status != "created" and not force:
                raise WrongState(f"run {run_id} already simulated; pass force to redo")
            log = run_simulation(record.config)
            (self._dir(run_id) / "log.jsonl").write_bytes(export_log(log))
            graph_path = self._dir(run_id) / "graph.jsonl"
            if graph_path.exists():
                graph_path.unlink()
            record.status = "simulated"
            self._write_record(record)
            self._log_cache[run_id] = log
            self._graph_cache.pop(run_id, None)
            return record

    def build_graph(self, run_id: str, force: bool = False) -> RunRecord:
        with self._lock(run_id):
            record = self.get(run_id)
            if record.status == "created":
                raise WrongState(f"run {run_id} has no log yet; simulate first")
            if record.status == "graphed" and not force:
                raise WrongState(f"run {run_id} already graphed; pass force to redo")
            graph = build_graph(self.load_log(run_id))
            (self._dir(run_id) / "graph.jsonl").write_bytes(export_graph_jsonl(graph))
            record.status = "graphed"
            self._write_record(record)
            self._graph_cache[run_id] = graph
            return record

    def load_log(self, run_id: str) -> EventLog:
        if run_id in self._log_cache:
            return self._log_cache[run_id]
        path = self._dir(run_id) / "log.jsonl"
        if not path.exists():
            record = self.get(run_id)  # raises RunNotFound for missing runs
            raise WrongState(f"run {record.run_id} has no log yet; simulate first")
        log = import_log(path.read_bytes())
        self._log_cache[run_id] = log
        return log

    def load_graph(self, run_id: str) -> PropertyGraph:
        if run_id in self._graph_cache:
            return self._graph_cache[run_id]
        path = self._dir(run_id) / "graph.jsonl"
        if not path.exists():
            record = self.get(run_id)
            raise WrongState(f"run {record.run_id} has no graph yet; build it first")
        graph = import_graph_jsonl(path.read_bytes())
        self._graph_cache[run_id] = graph
        return graph

    def log_path(self, run_id: str) -> Path:
        return self._dir(run_id) / "log.jsonl"

    def save_trace(self, run_id: str, trace_id: str, payload: dict) -> Path:
        traces = self._dir(run_id) / "traces"
        traces.mkdir(exist_ok=True)
        path = traces / f"{trace_id}.json"
        path.write_text(json.dumps(payload, indent=2, sort_keys=True), encoding="utf-8")
        return path

    def load_trace(self, run_id: str, trace_id: str) -> dict:
        path = self._dir(run_id) / "traces" / f"{trace_id}.json"
        if not path.exists():
            raise RunNotFound(f"trace {trace_id!r} does not exist for run {run_id}")
        return json.loads(path.read_text(encoding="utf-8"))
