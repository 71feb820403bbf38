"""Scenario perturbations: duration effects and monotonicity."""

from collections import defaultdict
from statistics import mean

import pytest

from wareflow.sim import (
    DegradedForklift,
    StageTransferDelay,
    SupplierProcessingDelay,
    apply_scenario,
    default_config,
    run_simulation,
)


def placement_means(log):
    per = defaultdict(list)
    for t in log.packages:
        per[t.forklift_id].append(t.fl_placement_end - t.fl_placement_start)
    return {k: mean(v) for k, v in per.items()}


def wait_to_worker_means(log):
    out = defaultdict(list)
    ds = {r.supplier_id: r.discharge_start for r in log.supplier_records}
    for t in log.packages:
        out[t.supplier_id].append(t.worker_pick_up_start - ds[t.supplier_id])
    return {k: mean(v) for k, v in out.items()}


class TestDegradedForklift:
    def test_placement_scales_by_factor(self):
        base = run_simulation(default_config(seed=11))
        slow = run_simulation(apply_scenario(default_config(seed=11), DegradedForklift("FL_00", 1.8)))
        assert placement_means(slow)["FL_00"] == pytest.approx(1.8 * placement_means(base)["FL_00"], rel=1e-9)
        # healthy units keep their exact durations (same storage draws)
        for fl in ("FL_01", "FL_02", "FL_03", "FL_04"):
            assert placement_means(slow)[fl] == pytest.approx(placement_means(base)[fl], rel=1e-9)

    def test_monotone_in_factor(self):
        m1 = placement_means(run_simulation(apply_scenario(default_config(seed=11), DegradedForklift("FL_00", 1.4))))
        m2 = placement_means(run_simulation(apply_scenario(default_config(seed=11), DegradedForklift("FL_00", 2.0))))
        assert m2["FL_00"] >= m1["FL_00"]


class TestStageTransferDelay:
    def test_wait_to_worker_scaled(self):
        cfg = apply_scenario(default_config(seed=11), StageTransferDelay("CamelCargo", "WaitToWorker", multiplier=2.5))
        log = run_simulation(cfg)
        waits = wait_to_worker_means(log)
        others = [v for k, v in waits.items() if k != "CamelCargo"]
        assert waits["CamelCargo"] > 2.0 * mean(others)

    def test_exact_scaling_against_baseline(self):
        base = wait_to_worker_means(run_simulation(default_config(seed=11)))
        cfg = apply_scenario(default_config(seed=11), StageTransferDelay("CamelCargo", "WaitToWorker", multiplier=2.5))
        pert = wait_to_worker_means(run_simulation(cfg))
        assert pert["CamelCargo"] == pytest.approx(2.5 * base["CamelCargo"], rel=1e-9)

    def test_monotone_in_multiplier(self):
        means = []
        for m in (1.5, 2.5, 4.0):
            cfg = apply_scenario(default_config(seed=11), StageTransferDelay("CamelCargo", "WaitToWorker", multiplier=m))
            means.append(wait_to_worker_means(run_simulation(cfg))["CamelCargo"])
        assert means[0] <= means[1] <= means[2]

    def test_added_delay_variant(self):
        base = wait_to_worker_means(run_simulation(default_config(seed=11)))
        cfg = apply_scenario(
            default_config(seed=11),
            StageTransferDelay("CamelCargo", "WaitToWorker", multiplier=None, added_delay=100.0),
        )
        pert = wait_to_worker_means(run_simulation(cfg))
        assert pert["CamelCargo"] == pytest.approx(base["CamelCargo"] + 100.0, rel=1e-9)

    def test_service_stage_stretch(self):
        cfg = apply_scenario(default_config(seed=11), StageTransferDelay("CamelCargo", "WorkerCarry", multiplier=2.0))
        log = run_simulation(cfg)
        carries = defaultdict(list)
        for t in log.packages:
            carries[t.supplier_id].append(t.worker_pick_up_end - t.worker_pick_up_start)
        assert mean(carries["CamelCargo"]) == pytest.approx(2.0 * mean(carries["DeltaDrops"]), rel=1e-9)


class TestOtherStageHooks:
    def test_wait_for_forklift_hold(self):
        base = run_simulation(default_config(seed=11))
        cfg = apply_scenario(default_config(seed=11), StageTransferDelay("CamelCargo", "WaitForForklift", multiplier=3.0))
        pert = run_simulation(cfg)

        def fl_waits(log):
            per = defaultdict(list)
            for t in log.packages:
                per[t.supplier_id].append(t.fl_placement_start - t.agv_journey_end)
            return {k: mean(v) for k, v in per.items()}

        assert fl_waits(pert)["CamelCargo"] > fl_waits(base)["CamelCargo"]

    def test_agv_transport_stretch(self):
        cfg = apply_scenario(default_config(seed=11), StageTransferDelay("CamelCargo", "AgvTransport", multiplier=2.0))
        log = run_simulation(cfg)
        rides = defaultdict(list)
        for t in log.packages:
            rides[t.supplier_id].append(t.agv_journey_end - t.agv_journey_start)
        assert mean(rides["CamelCargo"]) > 1.8 * mean(rides["DeltaDrops"])

    def test_wait_at_waiting_point_hold(self):
        base = run_simulation(default_config(seed=11))
        cfg = apply_scenario(default_config(seed=11), StageTransferDelay("CamelCargo", "WaitAtWaitingPoint", multiplier=3.0))
        pert = run_simulation(cfg)

        def wp_waits(log):
            per = defaultdict(list)
            for t in log.packages:
                per[t.supplier_id].append(t.agv_journey_start - t.worker_pick_up_end)
            return {k: mean(v) for k, v in per.items()}

        assert wp_waits(pert)["CamelCargo"] >= wp_waits(base)["CamelCargo"]
        # chain invariants survive the hold
        for t in pert.packages:
            assert t.agv_arrival <= t.agv_journey_start


class TestSupplierProcessingDelay:
    def test_handling_slows_carries(self):
        cfg = apply_scenario(default_config(seed=11), SupplierProcessingDelay("AuroraFarms", 1.6, True))
        log = run_simulation(cfg)
        carries = defaultdict(list)
        for t in log.packages:
            carries[t.supplier_id].append(t.worker_pick_up_end - t.worker_pick_up_start)
        assert mean(carries["AuroraFarms"]) == pytest.approx(1.6 * mean(carries["DeltaDrops"]), rel=1e-9)

    def test_misallocation_restricts_pool(self):
        cfg = apply_scenario(default_config(seed=11), SupplierProcessingDelay("AuroraFarms", 1.6, True))
        log = run_simulation(cfg)
        eligible = {f"AGV_{i:02d}" for i in range(cfg.agvs // 2)}
        used = {t.agv_id for t in log.packages if t.supplier_id == "AuroraFarms"}
        assert used <= eligible
        used_by_others = {t.agv_id for t in log.packages if t.supplier_id != "AuroraFarms"}
        assert not used_by_others <= eligible

    def test_no_misallocation_uses_full_pool(self):
        cfg = apply_scenario(default_config(seed=11), SupplierProcessingDelay("AuroraFarms", 1.6, False))
        log = run_simulation(cfg)
        used = {t.agv_id for t in log.packages if t.supplier_id == "AuroraFarms"}
        assert len(used) > cfg.agvs // 2 or len(used) == len({t.agv_id for t in log.packages})

    def test_monotone_in_handling_multiplier(self):
        means = []
        for h in (1.3, 1.8):
            cfg = apply_scenario(default_config(seed=11), SupplierProcessingDelay("AuroraFarms", h, True))
            means.append(wait_to_worker_means(run_simulation(cfg))["AuroraFarms"])
        assert means[0] <= means[1]
