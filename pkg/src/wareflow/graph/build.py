"""Event log to property graph transformation."""

from __future__ import annotations

from wareflow.errors import ValidationFailed
from wareflow.graph.store import EdgeRecord, NodeRecord, PropertyGraph, validate_graph
from wareflow.graph.values import DateTime
from wareflow.sim.log import EventLog


def build_graph(log: EventLog) -> PropertyGraph:
    """Five steps: extract temporal data, create resource nodes, create
    package-flow edges, validate integrity, build indexes.

    Node counts equal the distinct resource ids appearing in the log plus
    the suppliers' records; edges number four per package.
    """
    # step 1: temporal extraction - collect the distinct resources and their
    # timestamps straight from the traces
    supplier_times = {r.supplier_id: r for r in log.supplier_records}
    workers = sorted({t.worker_id for t in log.packages})
    agvs = sorted({t.agv_id for t in log.packages})
    forklifts = sorted({t.forklift_id for t in log.packages})
    blocks = sorted({t.block_id for t in log.packages})

    # step 2: resource nodes
    nodes: list[NodeRecord] = []
    for record in log.supplier_records:
        nodes.append(
            NodeRecord(
                label="SUPPLIER",
                key=record.supplier_id,
                props={
                    "supplier_id": record.supplier_id,
                    "arrival_time": DateTime(record.arrival_time),
                    "discharge_start": DateTime(record.discharge_start),
                    "discharge_end": DateTime(record.discharge_end),
                },
            )
        )
    nodes.extend(NodeRecord("WORKER", w, {"worker_id": w}) for w in workers)
    nodes.extend(NodeRecord("AGV", a, {"agv_id": a}) for a in agvs)
    nodes.extend(NodeRecord("FL", f, {"forklift_id": f}) for f in forklifts)
    nodes.extend(NodeRecord("STORAGE", b, {"block_id": b}) for b in blocks)

    # step 3: package-flow edges with timestamp properties; bay/shelf ride on
    # FL_TO_STORAGE as an extension beyond the node schema
    edges: list[EdgeRecord] = []
    for t in log.packages:
        if t.supplier_id not in supplier_times:
            raise ValidationFailed([])
        edges.append(
            EdgeRecord(
                type="SUPPLIER_TO_WORKER",
                src=("SUPPLIER", t.supplier_id),
                dst=("WORKER", t.worker_id),
                props={"package_id": t.package_id, "worker_pick_up_start": DateTime(t.worker_pick_up_start)},
            )
        )
        edges.append(
            EdgeRecord(
                type="WORKER_TO_AGV",
                src=("WORKER", t.worker_id),
                dst=("AGV", t.agv_id),
                props={
                    "package_id": t.package_id,
                    "agv_arrival": DateTime(t.agv_arrival),
                    "agv_journey_start": DateTime(t.agv_journey_start),
                    "worker_pick_up_end": DateTime(t.worker_pick_up_end),
                },
            )
        )
        edges.append(
            EdgeRecord(
                type="AGV_TO_FL",
                src=("AGV", t.agv_id),
                dst=("FL", t.forklift_id),
                props={
                    "package_id": t.package_id,
                    "agv_journey_end": DateTime(t.agv_journey_end),
                    "fl_placement_start": DateTime(t.fl_placement_start),
                },
            )
        )
        edges.append(
            EdgeRecord(
                type="FL_TO_STORAGE",
                src=("FL", t.forklift_id),
                dst=("STORAGE", t.block_id),
                props={
                    "package_id": t.package_id,
                    "fl_placement_end": DateTime(t.fl_placement_end),
                    "bay": t.bay,
                    "shelf": t.shelf,
                },
            )
        )

    # steps 4 and 5: integrity validation, then index construction (indexes
    # are built by the PropertyGraph constructor)
    graph = PropertyGraph(nodes, edges)
    violations = validate_graph(graph)
    if violations:
        raise ValidationFailed(violations)
    return graph
