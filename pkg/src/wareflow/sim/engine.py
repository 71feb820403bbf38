"""Event-driven execution of the four-stage unloading flow.

The run advances through a priority queue keyed by (time, sequence number)
so identical configs replay identically. All randomness is drawn up front
from a single SplitMix64 stream in a fixed order: per-supplier package
counts first (config order), then per-package storage durations in
package_id order, then per-package AGV distance jitter in package_id order
when jitter is enabled.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from wareflow.errors import ConfigInvalid, StorageFull
from wareflow.sim.config import (
    DegradedForklift,
    SimConfig,
    StageTransferDelay,
    SupplierProcessingDelay,
    travel_time,
    validate_config,
)
from wareflow.sim.log import EventLog, PackageTrace, SupplierRecord, busy_intervals_from_traces
from wareflow.sim.rng import SplitMix64


@dataclass
class _Package:
    package_id: str
    supplier_id: str
    block_index: int
    block_id: str
    storage_seconds: float = 0.0
    distance_jitter: float = 0.0
    worker_id: str = ""
    agv_id: str = ""
    forklift_id: str = ""
    bay: int = -1
    shelf: int = -1
    supplier_arrival: float = 0.0
    discharge_start: float = 0.0
    worker_pick_up_start: float = 0.0
    worker_pick_up_end: float = 0.0
    agv_arrival: float = 0.0
    agv_journey_start: float = 0.0
    agv_journey_end: float = 0.0
    fl_placement_start: float = 0.0
    fl_placement_end: float = 0.0

    def to_trace(self) -> PackageTrace:
        return PackageTrace(
            package_id=self.package_id,
            supplier_id=self.supplier_id,
            worker_id=self.worker_id,
            agv_id=self.agv_id,
            forklift_id=self.forklift_id,
            block_id=self.block_id,
            bay=self.bay,
            shelf=self.shelf,
            supplier_arrival=self.supplier_arrival,
            discharge_start=self.discharge_start,
            worker_pick_up_start=self.worker_pick_up_start,
            worker_pick_up_end=self.worker_pick_up_end,
            agv_arrival=self.agv_arrival,
            agv_journey_start=self.agv_journey_start,
            agv_journey_end=self.agv_journey_end,
            fl_placement_start=self.fl_placement_start,
            fl_placement_end=self.fl_placement_end,
        )


@dataclass
class _Team:
    index: int
    worker_ids: list[str]
    free_at: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.free_at:
            self.free_at = [0.0] * len(self.worker_ids)


class _Hooks:
    """Scenario perturbations expressed as duration-model overrides."""

    def __init__(self, config: SimConfig):
        scenario = config.scenario
        self.stage_delay: Optional[StageTransferDelay] = scenario if isinstance(scenario, StageTransferDelay) else None
        self.degraded: Optional[DegradedForklift] = scenario if isinstance(scenario, DegradedForklift) else None
        self.processing: Optional[SupplierProcessingDelay] = scenario if isinstance(scenario, SupplierProcessingDelay) else None
        self._eligible_cutoff = max(1, config.agvs // 2)

    @staticmethod
    def _hold(spec: StageTransferDelay, ready: float, natural: float) -> float:
        if spec.multiplier is not None:
            return ready + spec.multiplier * (natural - ready)
        return natural + (spec.added_delay or 0.0)

    @staticmethod
    def _stretch(spec: StageTransferDelay, base: float) -> float:
        if spec.multiplier is not None:
            return base * spec.multiplier
        return base + (spec.added_delay or 0.0)

    def worker_dispatch_mode(self, supplier_id: str) -> tuple[str, float]:
        """How pickups for this supplier deviate from the natural schedule.

        ``("exact", m)`` scales each package's natural wait (taken from a
        shadow replay of the unperturbed team), modeling a per-package
        transfer delay. ``("compound", h)`` scales the wait observed on the
        live schedule, so allocation latency feeds the next decision and
        accumulates, modeling laggy task allocation. ``("delay", d)`` adds a
        fixed pause, and ``("none", 0)`` leaves the schedule alone.
        """
        spec = self.stage_delay
        if spec and spec.stage == "WaitToWorker" and spec.supplier_id == supplier_id:
            if spec.multiplier is not None:
                return ("exact", spec.multiplier)
            return ("delay", spec.added_delay or 0.0)
        if self.processing and self.processing.supplier_id == supplier_id:
            return ("compound", self.processing.handling_multiplier)
        return ("none", 0.0)

    def carry_seconds(self, supplier_id: str, base: float) -> float:
        spec = self.stage_delay
        if spec and spec.stage == "WorkerCarry" and spec.supplier_id == supplier_id:
            return self._stretch(spec, base)
        if self.processing and self.processing.supplier_id == supplier_id:
            return base * self.processing.handling_multiplier
        return base

    def agv_dispatch(self, supplier_id: str, ready: float, natural: float) -> float:
        spec = self.stage_delay
        if spec and spec.stage == "WaitAtWaitingPoint" and spec.supplier_id == supplier_id:
            return self._hold(spec, ready, natural)
        return natural

    def transport_seconds(self, supplier_id: str, base: float) -> float:
        spec = self.stage_delay
        if spec and spec.stage == "AgvTransport" and spec.supplier_id == supplier_id:
            return self._stretch(spec, base)
        return base

    def agv_eligible(self, supplier_id: str, agv_index: int) -> bool:
        if self.processing and self.processing.misallocation_flag and self.processing.supplier_id == supplier_id:
            return agv_index < self._eligible_cutoff
        return True

    def forklift_dispatch(self, supplier_id: str, ready: float, natural: float) -> float:
        spec = self.stage_delay
        if spec and spec.stage == "WaitForForklift" and spec.supplier_id == supplier_id:
            return self._hold(spec, ready, natural)
        return natural

    def forklift_legs(self, supplier_id: str, forklift_id: str, travel: float, storage: float) -> tuple[float, float, float]:
        """Return (placement, return trip, recovery pause) durations.

        A degraded unit moves slowly on every leg and additionally loses a
        recovery pause proportional to the nominal task length between
        assignments; the pause is what separates its utilization from the
        healthy units, since a uniformly stretched cycle keeps the
        busy-to-span ratio unchanged once the queue saturates.
        """
        if self.degraded and self.degraded.forklift_id == forklift_id:
            f = self.degraded.slowdown_factor
            nominal_task = travel + storage + travel
            return f * (travel + storage), f * travel, (f - 1.0) * nominal_task
        placement = travel + storage
        spec = self.stage_delay
        if spec and spec.stage == "ForkliftPlacement" and spec.supplier_id == supplier_id:
            placement = self._stretch(spec, placement)
        return placement, travel, 0.0


class _Engine:
    def __init__(self, config: SimConfig):
        self.config = config
        self.hooks = _Hooks(config)
        self._heap: list[tuple[float, int, Callable[[], None]]] = []
        self._seq = 0
        self.now = 0.0

        rng = SplitMix64(config.seed)
        lo, hi = config.packages_per_supplier
        self.packages_by_supplier: dict[str, list[_Package]] = {}
        all_packages: list[_Package] = []
        global_index = 0
        for supplier_id, _ in config.suppliers:
            count = rng.randint(lo, hi)
            bucket = []
            for k in range(count):
                block_index = global_index % config.blocks
                pkg = _Package(
                    package_id=f"PKG_{supplier_id}_{k:03d}",
                    supplier_id=supplier_id,
                    block_index=block_index,
                    block_id=config.block_ids[block_index],
                )
                bucket.append(pkg)
                all_packages.append(pkg)
                global_index += 1
            self.packages_by_supplier[supplier_id] = bucket
        slo, shi = config.storage_duration
        by_id = sorted(all_packages, key=lambda p: p.package_id)
        for pkg in by_id:
            pkg.storage_seconds = rng.uniform(slo, shi)
        if config.agv_distance_jitter > 0:
            j = config.agv_distance_jitter
            for pkg in by_id:
                pkg.distance_jitter = rng.uniform(-j, j)
        self.all_packages = all_packages

        # stage 1 state
        self.free_docks = config.max_docks
        team_count = config.workers // config.team_size
        worker_ids = config.worker_ids()
        self.free_teams: deque[_Team] = deque(
            _Team(index=i, worker_ids=worker_ids[i * config.team_size : (i + 1) * config.team_size])
            for i in range(team_count)
        )
        self.dock_queue: deque[str] = deque()
        self.supplier_records: dict[str, SupplierRecord] = {}

        # stage 3 state
        self.agv_ids = config.agv_ids()
        self.idle_agvs: deque[int] = deque(range(config.agvs))
        self.waiting_point: deque[_Package] = deque()
        self.dock_carry = travel_time(config.layout.dock_to_waiting_point, config.worker_speed)

        # stage 4 state
        self.forklift_ids = config.forklift_ids()
        self.block_queues: list[deque[_Package]] = [deque() for _ in range(config.blocks)]
        self.forklift_idle: list[bool] = [True] * config.blocks
        self.slot_cursor: list[int] = [0] * config.blocks
        self.block_capacity = config.bays_per_block * config.shelves_per_bay
        self.fl_travel = travel_time(config.forklift_travel_distance, config.forklift_speed)

        self.completed = 0

    def schedule(self, time: float, action: Callable[[], None]) -> None:
        heapq.heappush(self._heap, (time, self._seq, action))
        self._seq += 1

    def run(self) -> EventLog:
        for supplier_id, offset in self.config.suppliers:
            self.schedule(offset, lambda sid=supplier_id: self._on_supplier_arrival(sid))
        while self._heap:
            time, _, action = heapq.heappop(self._heap)
            self.now = time
            action()
        if self.completed != len(self.all_packages):
            raise StorageFull("simulation ended with unplaced packages")
        traces = tuple(p.to_trace() for p in self.all_packages)
        records = tuple(self.supplier_records[sid] for sid, _ in self.config.suppliers)
        return EventLog(
            config_snapshot=self.config,
            packages=traces,
            supplier_records=records,
            resource_busy_intervals=busy_intervals_from_traces(traces),
        )

    # stage 1: dock and team assignment

    def _on_supplier_arrival(self, supplier_id: str) -> None:
        self.dock_queue.append(supplier_id)
        self._try_grant()

    def _try_grant(self) -> None:
        while self.dock_queue and self.free_docks > 0 and self.free_teams:
            supplier_id = self.dock_queue.popleft()
            self.free_docks -= 1
            team = self.free_teams.popleft()
            self._discharge(supplier_id, team, self.now)

    def _discharge(self, supplier_id: str, team: _Team, start: float) -> None:
        """Stage 2: the assigned team carries every package to the waiting point.

        A shadow replay of the team without the dispatch perturbation yields
        each package's natural wait; the perturbed pickup scales that wait.
        The scaled pickup never precedes the worker's real availability
        because held pickups only push return times later.
        """
        packages = self.packages_by_supplier[supplier_id]
        arrival = next(o for s, o in self.config.suppliers if s == supplier_id)
        carry = self.hooks.carry_seconds(supplier_id, self.dock_carry)
        mode, factor = self.hooks.worker_dispatch_mode(supplier_id)
        shadow = list(team.free_at)
        discharge_end = start
        for pkg in packages:
            slot = min(range(len(team.free_at)), key=lambda i: (team.free_at[i], i))
            natural_time = max(shadow[slot], start)
            shadow[slot] = natural_time + 2.0 * carry
            if mode == "exact":
                pick_up_start = start + factor * (natural_time - start)
            elif mode == "compound":
                live = max(team.free_at[slot], start)
                pick_up_start = start + factor * (live - start)
            elif mode == "delay":
                pick_up_start = natural_time + factor
            else:
                pick_up_start = natural_time
            pick_up_end = pick_up_start + carry
            team.free_at[slot] = pick_up_end + carry
            pkg.worker_id = team.worker_ids[slot]
            pkg.supplier_arrival = arrival
            pkg.discharge_start = start
            pkg.worker_pick_up_start = pick_up_start
            pkg.worker_pick_up_end = pick_up_end
            discharge_end = max(discharge_end, pick_up_end)
            self.schedule(pick_up_end, lambda p=pkg: self._on_package_at_waiting_point(p))
        self.supplier_records[supplier_id] = SupplierRecord(
            supplier_id=supplier_id,
            arrival_time=arrival,
            discharge_start=start,
            discharge_end=discharge_end,
        )
        self.schedule(discharge_end, lambda t=team: self._release(t))

    def _release(self, team: _Team) -> None:
        self.free_docks += 1
        self.free_teams.append(team)
        self._try_grant()

    # stage 3: shared AGV pool

    def _on_package_at_waiting_point(self, pkg: _Package) -> None:
        self.waiting_point.append(pkg)
        self._match_agv()

    def _match_agv(self) -> None:
        matched = True
        while matched:
            matched = False
            for qi, pkg in enumerate(self.waiting_point):
                for ai, agv_index in enumerate(self.idle_agvs):
                    if self.hooks.agv_eligible(pkg.supplier_id, agv_index):
                        del self.idle_agvs[ai]
                        del self.waiting_point[qi]
                        self._start_transport(pkg, agv_index)
                        matched = True
                        break
                if matched:
                    break

    def _start_transport(self, pkg: _Package, agv_index: int) -> None:
        config = self.config
        ready = pkg.worker_pick_up_end
        journey_start = self.hooks.agv_dispatch(pkg.supplier_id, ready, self.now)
        distance = config.layout.waiting_point_to_block[pkg.block_index] + pkg.distance_jitter
        base = travel_time(distance, config.agv_speed)
        journey = self.hooks.transport_seconds(pkg.supplier_id, base)
        pkg.agv_id = self.agv_ids[agv_index]
        pkg.agv_arrival = self.now
        pkg.agv_journey_start = journey_start
        pkg.agv_journey_end = journey_start + journey
        self.schedule(pkg.agv_journey_end, lambda p=pkg: self._on_package_at_block(p))
        self.schedule(pkg.agv_journey_end + base, lambda i=agv_index: self._on_agv_idle(i))

    def _on_agv_idle(self, agv_index: int) -> None:
        self.idle_agvs.append(agv_index)
        self._match_agv()

    # stage 4: block-dedicated forklifts

    def _on_package_at_block(self, pkg: _Package) -> None:
        self.block_queues[pkg.block_index].append(pkg)
        self._serve_block(pkg.block_index)

    def _serve_block(self, block_index: int) -> None:
        if not self.forklift_idle[block_index] or not self.block_queues[block_index]:
            return
        pkg = self.block_queues[block_index].popleft()
        self.forklift_idle[block_index] = False
        forklift_id = self.forklift_ids[block_index]
        placement_start = self.hooks.forklift_dispatch(pkg.supplier_id, pkg.agv_journey_end, self.now)
        placement, return_trip, recovery = self.hooks.forklift_legs(
            pkg.supplier_id, forklift_id, self.fl_travel, pkg.storage_seconds
        )
        cursor = self.slot_cursor[block_index]
        if cursor >= self.block_capacity:
            raise StorageFull(f"block {pkg.block_id} has no free slot for {pkg.package_id}")
        self.slot_cursor[block_index] = cursor + 1
        pkg.forklift_id = forklift_id
        pkg.bay = cursor // self.config.shelves_per_bay
        pkg.shelf = cursor % self.config.shelves_per_bay
        pkg.fl_placement_start = placement_start
        pkg.fl_placement_end = placement_start + placement
        self.completed += 1
        free_at = pkg.fl_placement_end + return_trip + recovery
        self.schedule(free_at, lambda b=block_index: self._on_forklift_free(b))

    def _on_forklift_free(self, block_index: int) -> None:
        self.forklift_idle[block_index] = True
        self._serve_block(block_index)


def run_simulation(config: SimConfig) -> EventLog:
    """Execute the flow and return the immutable event log."""
    violations = validate_config(config)
    if violations:
        raise ConfigInvalid(violations)
    return _Engine(config).run()
