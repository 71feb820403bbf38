"""Simulation parameterization, validation, and scenario perturbations."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Optional, Union

from wareflow.errors import NegativeDistance, NonPositiveSpeed, UnknownResource

DEFAULT_SUPPLIERS = [
    "AuroraFarms",
    "BlackSheepDist",
    "CamelCargo",
    "DeltaDrops",
    "EvergreenEdge",
]

DEFAULT_BLOCKS = ["A", "B", "C", "D", "E"]

# Stage identifiers shared with the analytics layer; order is the tie-break
# order for bottleneck verdicts.
STAGE_NAMES = (
    "WaitToWorker",
    "WorkerCarry",
    "WaitAtWaitingPoint",
    "AgvTransport",
    "WaitForForklift",
    "ForkliftPlacement",
)

WAIT_STAGES = {"WaitToWorker", "WaitAtWaitingPoint", "WaitForForklift"}
SERVICE_STAGES = {"WorkerCarry", "AgvTransport", "ForkliftPlacement"}


def travel_time(distance_m: float, speed_kmh: float) -> float:
    """Seconds to cover ``distance_m`` meters at ``speed_kmh`` km/h."""
    if speed_kmh <= 0:
        raise NonPositiveSpeed(f"speed must be > 0, got {speed_kmh}")
    if distance_m < 0:
        raise NegativeDistance(f"distance must be >= 0, got {distance_m}")
    return distance_m / (speed_kmh * 1000.0 / 3600.0)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message}


@dataclass(frozen=True)
class StageTransferDelay:
    """Scenario 1: a supplier's packages are delayed at one process stage.

    Wait stages hold the dispatch (the natural wait is scaled, or extended
    by a fixed amount); service stages stretch the operation itself.
    """

    supplier_id: str
    stage: str = "WaitToWorker"
    multiplier: Optional[float] = 2.5
    added_delay: Optional[float] = None

    kind = "stage_transfer_delay"


@dataclass(frozen=True)
class DegradedForklift:
    """Scenario 2: one forklift runs degraded for the whole shift.

    Travel and storage legs stretch by ``slowdown_factor``; the unit also
    loses an extra recovery pause between tasks proportional to the nominal
    task length, which is what drags its measured utilization below the
    healthy units (a uniformly slower cycle alone would not).
    """

    forklift_id: str
    slowdown_factor: float = 1.8

    kind = "degraded_forklift"


@dataclass(frozen=True)
class SupplierProcessingDelay:
    """Scenario 3: slow handling plus suboptimal task allocation.

    The handling multiplier stretches the supplier's worker dispatch and
    carries; the misallocation flag halves the AGV pool eligible to serve
    its packages.
    """

    supplier_id: str
    handling_multiplier: float = 1.6
    misallocation_flag: bool = True

    kind = "supplier_processing_delay"


ScenarioSpec = Union[None, StageTransferDelay, DegradedForklift, SupplierProcessingDelay]


def default_block_distances(blocks: int, mean_distance: float) -> list[float]:
    """Per-block AGV distances spread 10 m apart, centered on the mean."""
    offset = (blocks - 1) / 2.0
    return [mean_distance + 10.0 * (i - offset) for i in range(blocks)]


@dataclass(frozen=True)
class Layout:
    dock_to_waiting_point: float = 30.0
    waiting_point_to_block: tuple[float, ...] = tuple(default_block_distances(5, 140.0))

    def to_dict(self) -> dict:
        return {
            "dock_to_waiting_point": self.dock_to_waiting_point,
            "waiting_point_to_block": list(self.waiting_point_to_block),
        }


@dataclass(frozen=True)
class SimConfig:
    suppliers: tuple[tuple[str, float], ...] = tuple((s, 0.0) for s in DEFAULT_SUPPLIERS)
    packages_per_supplier: tuple[int, int] = (30, 35)
    supplier_speed: float = 20.0
    max_docks: int = 3
    workers: int = 12
    team_size: int = 4
    worker_speed: float = 2.0
    agvs: int = 20
    agv_speed: float = 3.5
    agv_distance: float = 140.0
    agv_distance_jitter: float = 0.0
    forklifts: int = 5
    forklift_speed: float = 5.0
    forklift_travel_distance: float = 20.0
    storage_duration: tuple[float, float] = (60.0, 90.0)
    blocks: int = 5
    bays_per_block: int = 15
    shelves_per_bay: int = 3
    block_ids: tuple[str, ...] = tuple(DEFAULT_BLOCKS)
    layout: Layout = field(default_factory=Layout)
    seed: int = 42
    scenario: ScenarioSpec = None

    @property
    def storage_capacity(self) -> int:
        return self.blocks * self.bays_per_block * self.shelves_per_bay

    def supplier_ids(self) -> list[str]:
        return [s for s, _ in self.suppliers]

    def worker_ids(self) -> list[str]:
        return [f"BW_{i:02d}" for i in range(self.workers)]

    def agv_ids(self) -> list[str]:
        return [f"AGV_{i:02d}" for i in range(self.agvs)]

    def forklift_ids(self) -> list[str]:
        return [f"FL_{i:02d}" for i in range(self.forklifts)]

    def to_dict(self) -> dict:
        return {
            "suppliers": [[s, o] for s, o in self.suppliers],
            "packages_per_supplier": list(self.packages_per_supplier),
            "supplier_speed": self.supplier_speed,
            "max_docks": self.max_docks,
            "workers": self.workers,
            "team_size": self.team_size,
            "worker_speed": self.worker_speed,
            "agvs": self.agvs,
            "agv_speed": self.agv_speed,
            "agv_distance": self.agv_distance,
            "agv_distance_jitter": self.agv_distance_jitter,
            "forklifts": self.forklifts,
            "forklift_speed": self.forklift_speed,
            "forklift_travel_distance": self.forklift_travel_distance,
            "storage_duration": list(self.storage_duration),
            "blocks": self.blocks,
            "bays_per_block": self.bays_per_block,
            "shelves_per_bay": self.shelves_per_bay,
            "block_ids": list(self.block_ids),
            "layout": self.layout.to_dict(),
            "seed": self.seed,
            "scenario": scenario_to_dict(self.scenario),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        base = cls()
        layout_data = data.get("layout")
        layout = base.layout
        if layout_data:
            layout = Layout(
                dock_to_waiting_point=float(layout_data["dock_to_waiting_point"]),
                waiting_point_to_block=tuple(float(d) for d in layout_data["waiting_point_to_block"]),
            )
        elif "blocks" in data or "agv_distance" in data:
            blocks = int(data.get("blocks", base.blocks))
            mean = float(data.get("agv_distance", base.agv_distance))
            layout = Layout(waiting_point_to_block=tuple(default_block_distances(blocks, mean)))
        blocks = int(data.get("blocks", base.blocks))
        block_ids = data.get("block_ids")
        if block_ids is None:
            block_ids = _default_block_ids(blocks)
        return cls(
            suppliers=tuple((str(s), float(o)) for s, o in data.get("suppliers", base.suppliers)),
            packages_per_supplier=tuple(int(v) for v in data.get("packages_per_supplier", base.packages_per_supplier)),  # type: ignore[arg-type]
            supplier_speed=float(data.get("supplier_speed", base.supplier_speed)),
            max_docks=int(data.get("max_docks", base.max_docks)),
            workers=int(data.get("workers", base.workers)),
            team_size=int(data.get("team_size", base.team_size)),
            worker_speed=float(data.get("worker_speed", base.worker_speed)),
            agvs=int(data.get("agvs", base.agvs)),
            agv_speed=float(data.get("agv_speed", base.agv_speed)),
            agv_distance=float(data.get("agv_distance", base.agv_distance)),
            agv_distance_jitter=float(data.get("agv_distance_jitter", base.agv_distance_jitter)),
            forklifts=int(data.get("forklifts", base.forklifts)),
            forklift_speed=float(data.get("forklift_speed", base.forklift_speed)),
            forklift_travel_distance=float(data.get("forklift_travel_distance", base.forklift_travel_distance)),
            storage_duration=tuple(float(v) for v in data.get("storage_duration", base.storage_duration)),  # type: ignore[arg-type]
            blocks=blocks,
            bays_per_block=int(data.get("bays_per_block", base.bays_per_block)),
            shelves_per_bay=int(data.get("shelves_per_bay", base.shelves_per_bay)),
            block_ids=tuple(str(b) for b in block_ids),
            layout=layout,
            seed=int(data.get("seed", base.seed)),
            scenario=scenario_from_dict(data.get("scenario")),
        )


def _default_block_ids(blocks: int) -> tuple[str, ...]:
    names = []
    for i in range(blocks):
        # A, B, ..., Z, AA, AB, ... for configs beyond 26 blocks
        name = ""
        n = i
        while True:
            name = chr(ord("A") + n % 26) + name
            n = n // 26 - 1
            if n < 0:
                break
        names.append(name)
    return tuple(names)


def scenario_to_dict(scenario: ScenarioSpec) -> Optional[dict]:
    if scenario is None:
        return None
    if isinstance(scenario, StageTransferDelay):
        return {
            "kind": scenario.kind,
            "supplier_id": scenario.supplier_id,
            "stage": scenario.stage,
            "multiplier": scenario.multiplier,
            "added_delay": scenario.added_delay,
        }
    if isinstance(scenario, DegradedForklift):
        return {
            "kind": scenario.kind,
            "forklift_id": scenario.forklift_id,
            "slowdown_factor": scenario.slowdown_factor,
        }
    if isinstance(scenario, SupplierProcessingDelay):
        return {
            "kind": scenario.kind,
            "supplier_id": scenario.supplier_id,
            "handling_multiplier": scenario.handling_multiplier,
            "misallocation_flag": scenario.misallocation_flag,
        }
    raise TypeError(f"unknown scenario type: {scenario!r}")


def scenario_from_dict(data: Optional[dict]) -> ScenarioSpec:
    if data is None:
        return None
    kind = data.get("kind")
    if kind == "stage_transfer_delay":
        return StageTransferDelay(
            supplier_id=data["supplier_id"],
            stage=data.get("stage", "WaitToWorker"),
            multiplier=data.get("multiplier"),
            added_delay=data.get("added_delay"),
        )
    if kind == "degraded_forklift":
        return DegradedForklift(
            forklift_id=data["forklift_id"],
            slowdown_factor=float(data.get("slowdown_factor", 1.8)),
        )
    if kind == "supplier_processing_delay":
        return SupplierProcessingDelay(
            supplier_id=data["supplier_id"],
            handling_multiplier=float(data.get("handling_multiplier", 1.6)),
            misallocation_flag=bool(data.get("misallocation_flag", True)),
        )
    raise ValueError(f"unknown scenario kind: {kind!r}")


def default_config(**overrides: Any) -> SimConfig:
    """Default parameterization; keyword overrides replace single fields."""
    return replace(SimConfig(), **overrides) if overrides else SimConfig()


def validate_config(config: SimConfig) -> list[Violation]:
    """Collect every violated invariant; an empty list means valid."""
    out: list[Violation] = []

    def bad(code: str, message: str) -> None:
        out.append(Violation(code, message))

    seen = set()
    for supplier_id, offset in config.suppliers:
        if supplier_id in seen:
            bad("DUPLICATE_SUPPLIER", f"supplier id {supplier_id!r} appears twice")
        seen.add(supplier_id)
        if offset < 0:
            bad("BAD_OFFSET", f"arrival offset of {supplier_id} must be >= 0, got {offset}")

    lo, hi = config.packages_per_supplier
    if lo < 0 or hi < lo:
        bad("BAD_RANGE", f"packages_per_supplier must satisfy 0 <= lo <= hi, got [{lo}, {hi}]")
    slo, shi = config.storage_duration
    if slo < 0 or shi < slo:
        bad("BAD_RANGE", f"storage_duration must satisfy 0 <= lo <= hi, got [{slo}, {shi}]")

    for name in ("max_docks", "workers", "team_size", "agvs", "forklifts", "blocks", "bays_per_block", "shelves_per_bay"):
        if getattr(config, name) < 1:
            bad("NON_POSITIVE_COUNT", f"{name} must be >= 1, got {getattr(config, name)}")

    for name in ("supplier_speed", "worker_speed", "agv_speed", "forklift_speed"):
        if getattr(config, name) <= 0:
            bad("NON_POSITIVE_SPEED", f"{name} must be > 0, got {getattr(config, name)}")

    for name in ("agv_distance", "forklift_travel_distance", "agv_distance_jitter"):
        if getattr(config, name) < 0:
            bad("NEGATIVE_DISTANCE", f"{name} must be >= 0, got {getattr(config, name)}")

    if config.team_size >= 1 and config.workers % config.team_size != 0:
        bad("TEAM_DIVISIBILITY", f"workers ({config.workers}) must divide into teams of {config.team_size}")

    if config.forklifts != config.blocks:
        bad("FORKLIFT_BLOCK_MISMATCH", f"block-specific assignment needs one forklift per block, got {config.forklifts} forklifts for {config.blocks} blocks")

    if len(config.block_ids) != config.blocks:
        bad("LAYOUT_MISMATCH", f"{config.blocks} blocks but {len(config.block_ids)} block ids")
    if len(config.layout.waiting_point_to_block) != config.blocks:
        bad("LAYOUT_MISMATCH", f"{config.blocks} blocks but {len(config.layout.waiting_point_to_block)} block distances")
    if config.layout.dock_to_waiting_point < 0 or any(d < 0 for d in config.layout.waiting_point_to_block):
        bad("NEGATIVE_DISTANCE", "layout distances must be >= 0")
    elif config.layout.waiting_point_to_block and config.agv_distance_jitter >= min(config.layout.waiting_point_to_block):
        bad("BAD_RANGE", "agv_distance_jitter must stay below the shortest block distance")

    if not 0 <= config.seed < (1 << 64):
        bad("BAD_SEED", f"seed must fit in 64 unsigned bits, got {config.seed}")

    out.extend(_validate_scenario(config))
    return out


def _validate_scenario(config: SimConfig) -> list[Violation]:
    scenario = config.scenario
    out: list[Violation] = []
    if scenario is None:
        return out
    supplier_ids = set(config.supplier_ids())
    if isinstance(scenario, StageTransferDelay):
        if scenario.supplier_id not in supplier_ids:
            out.append(Violation("UNKNOWN_RESOURCE", f"scenario references unknown supplier {scenario.supplier_id!r}"))
        if scenario.stage not in STAGE_NAMES:
            out.append(Violation("UNKNOWN_STAGE", f"unknown stage {scenario.stage!r}"))
        if scenario.multiplier is None and scenario.added_delay is None:
            out.append(Violation("BAD_FACTOR", "stage delay needs a multiplier or an added_delay"))
        if scenario.multiplier is not None and scenario.multiplier <= 1:
            out.append(Violation("BAD_FACTOR", f"multiplier must be > 1, got {scenario.multiplier}"))
        if scenario.added_delay is not None and scenario.added_delay < 0:
            out.append(Violation("BAD_DELAY", f"added_delay must be >= 0, got {scenario.added_delay}"))
    elif isinstance(scenario, DegradedForklift):
        if scenario.forklift_id not in config.forklift_ids():
            out.append(Violation("UNKNOWN_RESOURCE", f"scenario references unknown forklift {scenario.forklift_id!r}"))
        if scenario.slowdown_factor <= 1:
            out.append(Violation("BAD_FACTOR", f"slowdown_factor must be > 1, got {scenario.slowdown_factor}"))
    elif isinstance(scenario, SupplierProcessingDelay):
        if scenario.supplier_id not in supplier_ids:
            out.append(Violation("UNKNOWN_RESOURCE", f"scenario references unknown supplier {scenario.supplier_id!r}"))
        if scenario.handling_multiplier <= 1:
            out.append(Violation("BAD_FACTOR", f"handling_multiplier must be > 1, got {scenario.handling_multiplier}"))
    else:
        out.append(Violation("UNKNOWN_SCENARIO", f"unrecognized scenario {scenario!r}"))
    return out


def apply_scenario(config: SimConfig, scenario: ScenarioSpec) -> SimConfig:
    """Embed a perturbation into the config's duration-model hooks.

    ``None`` returns the config unchanged. The returned config still
    validates; unknown resource references raise immediately.
    """
    if scenario is None:
        return config
    candidate = replace(config, scenario=scenario)
    for violation in _validate_scenario(candidate):
        if violation.code == "UNKNOWN_RESOURCE":
            raise UnknownResource(violation.message)
    return candidate
