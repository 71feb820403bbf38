"""Query template registry for the rule planner.

Every canonical operational question binds to one template; the six
investigation templates back the diagnostic playbooks. Placeholders use
$supplier / $agv / $forklift, substituted from entities extracted out of
the question text. Shapes describe how a single-row-or-table result folds
into the structured answer compared against the analytics oracle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from string import Template
from typing import Optional

STAGE_LIST = "['WaitToWorker', 'WorkerCarry', 'WaitAtWaitingPoint', 'AgvTransport', 'WaitForForklift', 'ForkliftPlacement']"

STAGE_CASE = (
    "CASE WHEN stage = 'WaitToWorker' THEN duration_seconds(s.discharge_start, stw.worker_pick_up_start) "
    "WHEN stage = 'WorkerCarry' THEN duration_seconds(stw.worker_pick_up_start, wta.worker_pick_up_end) "
    "WHEN stage = 'WaitAtWaitingPoint' THEN duration_seconds(wta.worker_pick_up_end, wta.agv_journey_start) "
    "WHEN stage = 'AgvTransport' THEN duration_seconds(wta.agv_journey_start, atf.agv_journey_end) "
    "WHEN stage = 'WaitForForklift' THEN duration_seconds(atf.agv_journey_end, atf.fl_placement_start) "
    "WHEN stage = 'ForkliftPlacement' THEN duration_seconds(atf.fl_placement_start, fts.fl_placement_end) END"
)


@dataclass(frozen=True)
class TemplateEntry:
    template_id: str
    text: str
    keywords: tuple[str, ...]
    query: str
    shape: str
    params: tuple[str, ...] = ()
    intent: str = ""


REGISTRY: tuple[TemplateEntry, ...] = (
    TemplateEntry(
        "S01",
        "What is the number of discharge processes that are completed on an hourly basis?",
        ("discharge", "hourly"),
        "MATCH (s:SUPPLIER) "
        "WITH floor(toFloat(s.discharge_end) / 3600.0) AS hour, count(s) AS completed "
        "RETURN hour, completed ORDER BY hour ASC",
        "map:hour->completed",
        (),
        "count completed discharges per hour bucket",
    ),
    TemplateEntry(
        "S02",
        "Where and how many containers discharged from supplier DeltaDrops distributed in each block in the storage?",
        ("containers", "block", "storage", "supplier"),
        "MATCH (s:SUPPLIER {supplier_id: '$supplier'})-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "MATCH (f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) WHERE fts.package_id = stw.package_id "
        "RETURN st.block_id AS block_id, count(fts) AS packages ORDER BY block_id ASC",
        "map:block_id->packages",
        ("supplier",),
        "count one supplier's packages per storage block",
    ),
    TemplateEntry(
        "S03",
        "Which supplier had the shortest total discharge time and how many packages were moved?",
        ("supplier", "shortest", "discharge"),
        "MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "MATCH (f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) WHERE fts.package_id = stw.package_id "
        "WITH s.supplier_id AS supplier_id, s.discharge_start AS ds, max(fts.fl_placement_end) AS last_end, count(fts) AS packages "
        "WITH supplier_id, duration_seconds(ds, last_end) AS total_discharge_seconds, packages "
        "RETURN supplier_id, total_discharge_seconds, packages "
        "ORDER BY total_discharge_seconds ASC, supplier_id ASC LIMIT 1",
        "record:*",
        (),
        "rank suppliers by total discharge span",
    ),
    TemplateEntry(
        "S04",
        "What is the average waiting time for a supplier truck before unloading begins? Which truck waited the most?",
        ("average", "waiting", "truck", "unloading"),
        "CALL { MATCH (s:SUPPLIER) RETURN avg(duration_seconds(s.arrival_time, s.discharge_start)) AS average_wait_seconds } "
        "CALL { MATCH (s2:SUPPLIER) RETURN s2.supplier_id AS max_supplier_id, "
        "duration_seconds(s2.arrival_time, s2.discharge_start) AS max_wait_seconds "
        "ORDER BY max_wait_seconds DESC, max_supplier_id ASC LIMIT 1 } "
        "RETURN average_wait_seconds, max_supplier_id, max_wait_seconds",
        "record:*",
        (),
        "average dock wait plus the worst-waiting truck",
    ),
    TemplateEntry(
        "S05",
        "Which hour had the most total waiting time during package unload?",
        ("hour", "most", "waiting"),
        "MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "WITH floor(toFloat(stw.worker_pick_up_start) / 3600.0) AS hour, "
        "sum(duration_seconds(s.discharge_start, stw.worker_pick_up_start)) AS total_wait_seconds "
        "RETURN hour, total_wait_seconds ORDER BY total_wait_seconds DESC, hour ASC LIMIT 1",
        "record:*",
        (),
        "hour bucket with the highest summed wait",
    ),
    TemplateEntry(
        "W06",
        "For each person, what was the total number of packages they handled during a shift?",
        ("each", "person", "packages", "handled"),
        "MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "RETURN w.worker_id AS worker_id, count(stw) AS packages ORDER BY worker_id ASC",
        "map:worker_id->packages",
        (),
        "per-worker package counts",
    ),
    TemplateEntry(
        "W07",
        "What is the average time taken by a person to move a package from truck to AGV? Who is the most efficient person?",
        ("average", "person", "move", "efficient"),
        "CALL { MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV) "
        "WHERE wta.package_id = stw.package_id "
        "RETURN avg(duration_seconds(stw.worker_pick_up_start, wta.worker_pick_up_end)) AS average_move_seconds } "
        "CALL { MATCH (s2:SUPPLIER)-[stw2:SUPPLIER_TO_WORKER]->(w2:WORKER)-[wta2:WORKER_TO_AGV]->(a2:AGV) "
        "WHERE wta2.package_id = stw2.package_id "
        "WITH w2.worker_id AS wid, avg(duration_seconds(stw2.worker_pick_up_start, wta2.worker_pick_up_end)) AS mean_move "
        "RETURN wid AS most_efficient_worker_id, mean_move AS best_mean_move_seconds "
        "ORDER BY best_mean_move_seconds ASC, most_efficient_worker_id ASC LIMIT 1 } "
        "RETURN average_move_seconds, most_efficient_worker_id, best_mean_move_seconds",
        "record:*",
        (),
        "mean truck-to-waiting-point carry and fastest worker",
    ),
    TemplateEntry(
        "W08",
        "How much time does each worker take to unload all packages from supplier DeltaDrops?",
        ("each", "worker", "unload", "supplier"),
        "MATCH (s:SUPPLIER {supplier_id: '$supplier'})-[stw:SUPPLIER_TO_WORKER]->(w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV) "
        "WHERE wta.package_id = stw.package_id "
        "RETURN w.worker_id AS worker_id, "
        "sum(duration_seconds(stw.worker_pick_up_start, wta.worker_pick_up_end)) AS total_handling_seconds "
        "ORDER BY worker_id ASC",
        "map:worker_id->total_handling_seconds",
        ("supplier",),
        "per-worker carry total for one supplier",
    ),
    TemplateEntry(
        "W09",
        "How many workers were used to unload packages from supplier CamelCargo?",
        ("how", "many", "workers", "supplier"),
        "MATCH (s:SUPPLIER {supplier_id: '$supplier'})-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "RETURN count(DISTINCT w.worker_id) AS workers",
        "scalar:workers",
        ("supplier",),
        "distinct workers serving one supplier",
    ),
    TemplateEntry(
        "W10",
        "Which workers were assigned to most number of suppliers?",
        ("workers", "assigned", "most", "suppliers"),
        "CALL { MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "WITH w.worker_id AS wid, count(DISTINCT s.supplier_id) AS n RETURN max(n) AS max_suppliers } "
        "CALL { WITH max_suppliers MATCH (s2:SUPPLIER)-[stw2:SUPPLIER_TO_WORKER]->(w2:WORKER) "
        "WITH max_suppliers, w2.worker_id AS worker_id, count(DISTINCT s2.supplier_id) AS suppliers "
        "WHERE suppliers = max_suppliers RETURN worker_id, suppliers ORDER BY worker_id ASC } "
        "RETURN worker_id, suppliers",
        "ranked:worker_id,suppliers",
        (),
        "workers attaining the max distinct-supplier count",
    ),
    TemplateEntry(
        "A11",
        "Which three AGVs processed the least amount of packages?",
        ("three", "agvs", "least", "packages"),
        "MATCH (w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV) "
        "WITH a.agv_id AS agv_id, count(wta) AS packages "
        "RETURN agv_id, packages ORDER BY packages ASC, agv_id ASC LIMIT 3",
        "ranked:agv_id,packages",
        (),
        "three least-loaded AGVs",
    ),
    TemplateEntry(
        "A12",
        "What is the average travel time for an AGV to move a package from the dock to its assigned storage area?",
        ("average", "travel", "agv", "storage"),
        "MATCH (w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "WHERE atf.package_id = wta.package_id "
        "RETURN avg(duration_seconds(wta.agv_journey_start, atf.agv_journey_end)) AS average_transport_seconds",
        "scalar:average_transport_seconds",
        (),
        "mean loaded AGV journey",
    ),
    TemplateEntry(
        "A13",
        "How many trips does each agv make during unloading along with the average journey time?",
        ("trips", "each", "agv", "journey"),
        "MATCH (w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "WHERE atf.package_id = wta.package_id "
        "WITH a.agv_id AS agv_id, count(wta) AS trips, "
        "avg(duration_seconds(wta.agv_journey_start, atf.agv_journey_end)) AS mean_journey_seconds "
        "RETURN agv_id, trips, mean_journey_seconds ORDER BY agv_id ASC",
        "map:agv_id->*",
        (),
        "per-AGV trip count and mean journey",
    ),
    TemplateEntry(
        "A14",
        "How many packages did AGV 04 handle from each supplier?",
        ("packages", "agv", "each", "supplier"),
        "MATCH (w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV {agv_id: '$agv'}) "
        "MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w2:WORKER) WHERE stw.package_id = wta.package_id "
        "RETURN s.supplier_id AS supplier_id, count(wta) AS packages ORDER BY supplier_id ASC",
        "map:supplier_id->packages",
        ("agv",),
        "one AGV's load split by supplier",
    ),
    TemplateEntry(
        "A15",
        "Which AGV was the least utilized?",
        ("agv", "least", "utilized"),
        "MATCH (w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "WHERE atf.package_id = wta.package_id "
        "WITH a.agv_id AS agv_id, sum(duration_seconds(wta.agv_journey_start, atf.agv_journey_end)) AS busy_seconds, "
        "min(wta.agv_journey_start) AS first_start, max(atf.agv_journey_end) AS last_end "
        "WITH agv_id, CASE WHEN duration_seconds(first_start, last_end) > 0.0 "
        "THEN busy_seconds / duration_seconds(first_start, last_end) ELSE null END AS utilization "
        "RETURN agv_id, utilization ORDER BY utilization ASC, agv_id ASC LIMIT 1",
        "record:*",
        (),
        "argmin AGV utilization",
    ),
    TemplateEntry(
        "F16",
        "Which package waited the longest for a fork lift?",
        ("package", "waited", "longest"),
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "RETURN atf.package_id AS package_id, "
        "duration_seconds(atf.agv_journey_end, atf.fl_placement_start) AS wait_seconds "
        "ORDER BY wait_seconds DESC, package_id ASC LIMIT 1",
        "record:*",
        (),
        "argmax forklift wait",
    ),
    TemplateEntry(
        "F17",
        "How many packages are handled by each forklift?",
        ("packages", "each", "forklift"),
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "RETURN f.forklift_id AS forklift_id, count(atf) AS packages ORDER BY forklift_id ASC",
        "map:forklift_id->packages",
        (),
        "per-forklift package counts",
    ),
    TemplateEntry(
        "F18",
        "Which forklift is the most under utilized?",
        ("forklift", "under", "utilized"),
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) "
        "WHERE fts.package_id = atf.package_id "
        "WITH f.forklift_id AS forklift_id, sum(duration_seconds(atf.fl_placement_start, fts.fl_placement_end)) AS busy_seconds, "
        "min(atf.fl_placement_start) AS first_start, max(fts.fl_placement_end) AS last_end "
        "WITH forklift_id, CASE WHEN duration_seconds(first_start, last_end) > 0.0 "
        "THEN busy_seconds / duration_seconds(first_start, last_end) ELSE null END AS utilization "
        "RETURN forklift_id, utilization ORDER BY utilization ASC, forklift_id ASC LIMIT 1",
        "record:*",
        (),
        "argmin forklift utilization",
    ),
    TemplateEntry(
        "F19",
        "What is the average time taken by a forklift to move a package to its assigned storage space?",
        ("average", "forklift", "storage"),
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) "
        "WHERE fts.package_id = atf.package_id "
        "RETURN avg(duration_seconds(atf.fl_placement_start, fts.fl_placement_end)) AS average_placement_seconds",
        "scalar:average_placement_seconds",
        (),
        "mean placement duration",
    ),
    TemplateEntry(
        "F20",
        "What is the utilization rate (percentage of time in use) for each forklift?",
        ("utilization", "rate", "each", "forklift"),
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) "
        "WHERE fts.package_id = atf.package_id "
        "WITH f.forklift_id AS forklift_id, sum(duration_seconds(atf.fl_placement_start, fts.fl_placement_end)) AS busy_seconds, "
        "min(atf.fl_placement_start) AS first_start, max(fts.fl_placement_end) AS last_end "
        "WITH forklift_id, CASE WHEN duration_seconds(first_start, last_end) > 0.0 "
        "THEN busy_seconds / duration_seconds(first_start, last_end) * 100.0 ELSE null END AS utilization_percent "
        "RETURN forklift_id, utilization_percent ORDER BY forklift_id ASC",
        "map:forklift_id->utilization_percent",
        (),
        "per-forklift utilization percentage",
    ),
    TemplateEntry(
        "P21",
        "which storage block contains the highest number of containers?",
        ("storage", "block", "highest"),
        "MATCH (f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) "
        "RETURN st.block_id AS block_id, count(fts) AS packages "
        "ORDER BY packages DESC, block_id ASC LIMIT 1",
        "record:*",
        (),
        "argmax block fill",
    ),
    TemplateEntry(
        "P22",
        "What is the average time a package discharge takes?",
        ("average", "package", "discharge"),
        "MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "MATCH (f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) WHERE fts.package_id = stw.package_id "
        "RETURN avg(duration_seconds(s.discharge_start, fts.fl_placement_end)) AS average_discharge_seconds",
        "scalar:average_discharge_seconds",
        (),
        "mean package span from discharge start to placement",
    ),
    TemplateEntry(
        "P23",
        "What is the average waiting time for a package to be transferred to a forklift after AGV arrival at the storage area?",
        ("average", "waiting", "transferred", "forklift"),
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "RETURN avg(duration_seconds(atf.agv_journey_end, atf.fl_placement_start)) AS average_wait_seconds",
        "scalar:average_wait_seconds",
        (),
        "mean wait between AGV drop-off and placement start",
    ),
    TemplateEntry(
        "P24",
        "Which package experienced the longest total time from arrival at the dock to placement in its final storage location?",
        ("package", "longest", "total", "arrival"),
        "MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "MATCH (f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) WHERE fts.package_id = stw.package_id "
        "RETURN stw.package_id AS package_id, duration_seconds(s.arrival_time, fts.fl_placement_end) AS total_seconds "
        "ORDER BY total_seconds DESC, package_id ASC LIMIT 1",
        "record:*",
        (),
        "argmax arrival-to-placement span",
    ),
    TemplateEntry(
        "P25",
        "How many packages took longer than the average unload time during and what is the average discharge time?",
        ("how", "many", "longer", "average"),
        "CALL { MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "MATCH (f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) WHERE fts.package_id = stw.package_id "
        "RETURN avg(duration_seconds(s.discharge_start, fts.fl_placement_end)) AS average_discharge_seconds } "
        "CALL { WITH average_discharge_seconds "
        "MATCH (s2:SUPPLIER)-[stw2:SUPPLIER_TO_WORKER]->(w2:WORKER) "
        "MATCH (f2:FL)-[fts2:FL_TO_STORAGE]->(st2:STORAGE) "
        "WHERE fts2.package_id = stw2.package_id "
        "AND duration_seconds(s2.discharge_start, fts2.fl_placement_end) > average_discharge_seconds "
        "RETURN count(fts2) AS packages_over_average } "
        "RETURN packages_over_average, average_discharge_seconds",
        "record:*",
        (),
        "count packages above the mean span",
    ),
    TemplateEntry(
        "P26",
        "Which packages were handled by both AGV 10 and forklift 00?",
        ("packages", "both", "agv", "forklift"),
        "MATCH (w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV {agv_id: '$agv'}) "
        "MATCH (a2:AGV)-[atf:AGV_TO_FL]->(f:FL {forklift_id: '$forklift'}) "
        "WHERE atf.package_id = wta.package_id "
        "RETURN wta.package_id AS package_id ORDER BY package_id ASC",
        "list:package_id",
        ("agv", "forklift"),
        "packages touching both named units",
    ),
    # investigation playbook templates
    TemplateEntry(
        "I_DISCHARGE_VS_GLOBAL",
        "What is the total discharge time for supplier $supplier and how does it compare to the global average?",
        ("total", "discharge", "compare", "global"),
        "CALL { MATCH (s:SUPPLIER {supplier_id: '$supplier'})-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "MATCH (f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) WHERE fts.package_id = stw.package_id "
        "WITH s.discharge_start AS ds, max(fts.fl_placement_end) AS last_end "
        "RETURN duration_seconds(ds, last_end) AS subject_discharge_seconds } "
        "CALL { MATCH (s2:SUPPLIER)-[stw2:SUPPLIER_TO_WORKER]->(w2:WORKER) "
        "MATCH (f2:FL)-[fts2:FL_TO_STORAGE]->(st2:STORAGE) WHERE fts2.package_id = stw2.package_id "
        "WITH s2.supplier_id AS sid, s2.discharge_start AS ds2, max(fts2.fl_placement_end) AS last2 "
        "WITH sid, duration_seconds(ds2, last2) AS discharge_seconds "
        "RETURN avg(discharge_seconds) AS global_average_discharge_seconds } "
        "RETURN subject_discharge_seconds, global_average_discharge_seconds, "
        "subject_discharge_seconds / global_average_discharge_seconds AS ratio_to_global",
        "record:*",
        ("supplier",),
        "compare one supplier's discharge span to the average",
    ),
    TemplateEntry(
        "I_SUPPLIER_WAIT_VS_GLOBAL",
        "What is the supplier waiting time for $supplier and how does it compare to the global average supplier waiting time?",
        ("supplier", "waiting", "compare", "global"),
        "CALL { MATCH (s:SUPPLIER {supplier_id: '$supplier'}) "
        "RETURN duration_seconds(s.arrival_time, s.discharge_start) AS subject_wait_seconds } "
        "CALL { MATCH (s2:SUPPLIER) "
        "RETURN avg(duration_seconds(s2.arrival_time, s2.discharge_start)) AS global_average_wait_seconds } "
        "RETURN subject_wait_seconds, global_average_wait_seconds",
        "record:*",
        ("supplier",),
        "compare one supplier's dock wait to the average",
    ),
    TemplateEntry(
        "I_AGV_UTILIZATION_VS_GLOBAL",
        "What is the utilization rate of AGVs for supplier $supplier compared to the global average AGV utilization?",
        ("utilization", "agvs", "global"),
        "MATCH (a:AGV) WITH a.agv_id AS agv_id "
        "CALL { WITH agv_id MATCH (w:WORKER)-[wta:WORKER_TO_AGV]->(a2:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "WHERE a2.agv_id = agv_id AND atf.package_id = wta.package_id "
        "RETURN sum(duration_seconds(wta.agv_journey_start, atf.agv_journey_end)) AS total_busy_seconds, "
        "min(wta.agv_journey_start) AS first_start, max(atf.agv_journey_end) AS last_end } "
        "CALL { WITH agv_id MATCH (s:SUPPLIER {supplier_id: '$supplier'})-[stw:SUPPLIER_TO_WORKER]->(w2:WORKER)-[wta2:WORKER_TO_AGV]->(a3:AGV) "
        "WHERE a3.agv_id = agv_id AND wta2.package_id = stw.package_id "
        "MATCH (a3)-[atf2:AGV_TO_FL]->(f2:FL) WHERE atf2.package_id = wta2.package_id "
        "RETURN sum(duration_seconds(wta2.agv_journey_start, atf2.agv_journey_end)) AS subject_busy_seconds } "
        "WITH agv_id, total_busy_seconds, subject_busy_seconds, duration_seconds(first_start, last_end) AS span_seconds "
        "WITH avg(CASE WHEN span_seconds > 0.0 THEN subject_busy_seconds / span_seconds ELSE null END) AS agv_subject_utilization, "
        "avg(CASE WHEN span_seconds > 0.0 THEN total_busy_seconds / span_seconds ELSE null END) AS agv_global_utilization "
        "RETURN agv_subject_utilization, agv_global_utilization",
        "record:*",
        ("supplier",),
        "AGV utilization on the supplier's flow versus overall",
    ),
    TemplateEntry(
        "I_FL_UTILIZATION_VS_GLOBAL",
        "What is the utilization rate of forklifts for supplier $supplier compared to the global average forklift utilization?",
        ("utilization", "forklifts", "global"),
        "MATCH (f:FL) WITH f.forklift_id AS forklift_id "
        "CALL { WITH forklift_id MATCH (a:AGV)-[atf:AGV_TO_FL]->(f2:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) "
        "WHERE f2.forklift_id = forklift_id AND fts.package_id = atf.package_id "
        "RETURN sum(duration_seconds(atf.fl_placement_start, fts.fl_placement_end)) AS total_busy_seconds, "
        "min(atf.fl_placement_start) AS first_start, max(fts.fl_placement_end) AS last_end } "
        "CALL { WITH forklift_id MATCH (s:SUPPLIER {supplier_id: '$supplier'})-[stw:SUPPLIER_TO_WORKER]->(w:WORKER) "
        "MATCH (a2:AGV)-[atf2:AGV_TO_FL]->(f3:FL)-[fts2:FL_TO_STORAGE]->(st2:STORAGE) "
        "WHERE f3.forklift_id = forklift_id AND atf2.package_id = stw.package_id AND fts2.package_id = stw.package_id "
        "RETURN sum(duration_seconds(atf2.fl_placement_start, fts2.fl_placement_end)) AS subject_busy_seconds } "
        "WITH forklift_id, total_busy_seconds, subject_busy_seconds, duration_seconds(first_start, last_end) AS span_seconds "
        "WITH avg(CASE WHEN span_seconds > 0.0 THEN subject_busy_seconds / span_seconds ELSE null END) AS fl_subject_utilization, "
        "avg(CASE WHEN span_seconds > 0.0 THEN total_busy_seconds / span_seconds ELSE null END) AS fl_global_utilization "
        "RETURN fl_subject_utilization, fl_global_utilization",
        "record:*",
        ("supplier",),
        "forklift utilization on the supplier's flow versus overall",
    ),
    TemplateEntry(
        "I_STAGE_TABLE",
        "What are the package waiting times at each stage of the discharge process for supplier $supplier and how do they compare to the global average waiting times at each stage?",
        ("package", "waiting", "each", "stage", "global"),
        "MATCH (s:SUPPLIER)-[stw:SUPPLIER_TO_WORKER]->(w:WORKER)-[wta:WORKER_TO_AGV]->(a:AGV) "
        "WHERE wta.package_id = stw.package_id "
        "MATCH (a)-[atf:AGV_TO_FL]->(f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) "
        "WHERE atf.package_id = wta.package_id AND fts.package_id = wta.package_id "
        f"UNWIND {STAGE_LIST} AS stage "
        f"WITH stage, s.supplier_id AS sid, {STAGE_CASE} AS stage_seconds "
        "WITH stage, avg(CASE WHEN sid = '$supplier' THEN stage_seconds ELSE null END) AS subject_mean_seconds, "
        "avg(stage_seconds) AS global_mean_seconds "
        "WITH stage, subject_mean_seconds, global_mean_seconds, "
        "CASE WHEN global_mean_seconds > 0.0 THEN subject_mean_seconds / global_mean_seconds ELSE null END AS ratio "
        "RETURN stage, subject_mean_seconds, global_mean_seconds, ratio ORDER BY stage ASC",
        "rows",
        ("supplier",),
        "per-stage subject versus global means and ratios",
    ),
    TemplateEntry(
        "I_FORKLIFT_WAITS",
        "What is the average waiting time for each forklift during the discharge flow and how does it compare to the global average waiting time for all forklifts?",
        ("average", "waiting", "each", "forklift", "global"),
        "CALL { MATCH (a2:AGV)-[atf2:AGV_TO_FL]->(f2:FL) "
        "RETURN avg(duration_seconds(atf2.agv_journey_end, atf2.fl_placement_start)) AS global_mean_wait_seconds } "
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL) "
        "WITH global_mean_wait_seconds, f.forklift_id AS forklift_id, "
        "avg(duration_seconds(atf.agv_journey_end, atf.fl_placement_start)) AS mean_wait_seconds "
        "RETURN 'WaitForForklift' AS stage, forklift_id, mean_wait_seconds, global_mean_wait_seconds, "
        "CASE WHEN global_mean_wait_seconds > 0.0 THEN mean_wait_seconds / global_mean_wait_seconds ELSE null END AS ratio "
        "ORDER BY ratio DESC, forklift_id ASC",
        "rows",
        (),
        "per-forklift wait versus the global mean",
    ),
    TemplateEntry(
        "I_FORKLIFT_UTILIZATION",
        "What is the utilization percentage for each forklift during the discharge flow?",
        ("utilization", "percentage", "each", "forklift"),
        "MATCH (a:AGV)-[atf:AGV_TO_FL]->(f:FL)-[fts:FL_TO_STORAGE]->(st:STORAGE) "
        "WHERE fts.package_id = atf.package_id "
        "WITH f.forklift_id AS forklift_id, sum(duration_seconds(atf.fl_placement_start, fts.fl_placement_end)) AS busy_seconds, "
        "min(atf.fl_placement_start) AS first_start, max(fts.fl_placement_end) AS last_end "
        "WITH forklift_id, CASE WHEN duration_seconds(first_start, last_end) > 0.0 "
        "THEN busy_seconds / duration_seconds(first_start, last_end) ELSE null END AS utilization "
        "RETURN forklift_id, utilization ORDER BY utilization ASC, forklift_id ASC",
        "rows",
        (),
        "per-forklift utilization, least utilized first",
    ),
)

_BY_ID = {entry.template_id: entry for entry in REGISTRY}

_WORD = re.compile(r"[a-z0-9]+")


def normalize(text: str) -> str:
    return " ".join(_WORD.findall(text.lower()))


_BY_TEXT = {normalize(entry.text): entry for entry in REGISTRY}


def entry_by_id(template_id: str) -> TemplateEntry:
    return _BY_ID[template_id]


def match_entry(question: str) -> Optional[TemplateEntry]:
    """Exact normalized text first, then keyword-signature scoring."""
    normalized = normalize(question)
    if normalized in _BY_TEXT:
        return _BY_TEXT[normalized]
    words = set(normalized.split())
    best = None
    for entry in REGISTRY:
        if all(keyword in words for keyword in entry.keywords):
            if best is None or len(entry.keywords) > len(best.keywords):
                best = entry
    return best


def render_query(entry: TemplateEntry, params: dict[str, str]) -> str:
    return Template(entry.query).safe_substitute(params)


def render_text(entry: TemplateEntry, params: dict[str, str]) -> str:
    return Template(entry.text).safe_substitute(params)


def operational_entries() -> list[TemplateEntry]:
    return [e for e in REGISTRY if not e.template_id.startswith("I_")]


def playbook_entries() -> list[TemplateEntry]:
    return [e for e in REGISTRY if e.template_id.startswith("I_")]
