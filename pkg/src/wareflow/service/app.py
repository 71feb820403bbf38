"""HTTP adapter over the run store and question pipeline (/v1)."""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from wareflow import __version__
from wareflow.agent.classify import INVESTIGATIVE, classify_query
from wareflow.agent.chain import run_qa_chain
from wareflow.agent.investigation import run_investigation
from wareflow.errors import (
    ConfigInvalid,
    MalformedReply,
    ProviderUnavailable,
    RunNotFound,
    StepExhausted,
    UnmatchedIntent,
    WareflowError,
    WrongState,
)
from wareflow.graph import export_graph_cypher
from wareflow.service.providers import resolve_provider
from wareflow.service.runs import RunStore, new_run_id
from wareflow.sim import export_traces_csv, validate_config
from wareflow.sim.config import SimConfig

ERROR_STATUS = {
    ConfigInvalid: 400,
    RunNotFound: 404,
    WrongState: 409,
    UnmatchedIntent: 422,
    StepExhausted: 422,
    ProviderUnavailable: 502,
    MalformedReply: 502,
}


def create_app(runs_dir: Optional[Path] = None, console_dir: Optional[Path] = None) -> FastAPI:
    runs_dir = Path(runs_dir or os.environ.get("WAREFLOW_RUNS_DIR", "./runs"))
    store = RunStore(runs_dir)
    app = FastAPI(title="wareflow", version=__version__)
    app.state.store = store

    @app.exception_handler(WareflowError)
    async def domain_error(request: Request, exc: WareflowError):
        status = 422
        for klass, code in ERROR_STATUS.items():
            if isinstance(exc, klass):
                status = code
                break
        payload = {"error": exc.code, "detail": str(exc)}
        if isinstance(exc, ConfigInvalid):
            payload["violations"] = [v.to_dict() for v in exc.violations]
        return JSONResponse(status_code=status, content=payload)

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/v1/config/defaults")
    def config_defaults():
        return SimConfig().to_dict()

    @app.post("/v1/runs", status_code=201)
    def create_run(body: dict = Body(default={})):
        config = SimConfig.from_dict(body.get("config", {}))
        violations = validate_config(config)
        if violations:
            raise ConfigInvalid(violations)
        record = store.create(config)
        return record.to_dict()

    @app.get("/v1/runs")
    def list_runs():
        return {"runs": [r.to_dict() for r in store.list_runs()]}

    @app.get("/v1/runs/{run_id}")
    def get_run(run_id: str):
        return store.get(run_id).to_dict()

    @app.post("/v1/runs/{run_id}/simulate")
    def simulate(run_id: str, body: dict = Body(default={})):
        record = store.simulate(run_id, force=bool(body.get("force", False)))
        log = store.load_log(run_id)
        return {**record.to_dict(), "packages": len(log.packages)}

    @app.post("/v1/runs/{run_id}/graph")
    def build_graph_endpoint(run_id: str, body: dict = Body(default={})):
        record = store.build_graph(run_id, force=bool(body.get("force", False)))
        graph = store.load_graph(run_id)
        return {**record.to_dict(), "nodes": graph.node_count(), "edges": graph.edge_count()}

    @app.get("/v1/runs/{run_id}/log")
    def get_log(run_id: str):
        record = store.get(run_id)
        if record.status == "created":
            raise WrongState(f"run {run_id} has no log yet; simulate first")
        return PlainTextResponse(store.log_path(run_id).read_text(encoding="utf-8"), media_type="application/jsonl")

    @app.get("/v1/runs/{run_id}/export")
    def export(run_id: str, what: str = Query("log"), format: str = Query("jsonl")):
        record = store.get(run_id)
        if record.status == "created":
            raise WrongState(f"run {run_id} has no artifacts yet; simulate first")
        if what == "log" and format == "csv":
            return PlainTextResponse(export_traces_csv(store.load_log(run_id)).decode(), media_type="text/csv")
        if what == "log":
            return PlainTextResponse(store.log_path(run_id).read_text(encoding="utf-8"), media_type="application/jsonl")
        graph = store.load_graph(run_id)
        if format == "cypher-script":
            return PlainTextResponse(export_graph_cypher(graph).decode(), media_type="text/plain")
        return PlainTextResponse((store.root / run_id / "graph.jsonl").read_text(encoding="utf-8"), media_type="application/jsonl")

    @app.post("/v1/runs/{run_id}/ask")
    def ask(run_id: str, body: dict = Body(...)):
        question = str(body.get("question", "")).strip()
        if not question:
            raise UnmatchedIntent("question must be non-empty")
        record = store.get(run_id)
        if record.status != "graphed":
            raise WrongState(f"run {run_id} is not graphed yet")
        graph = store.load_graph(run_id)
        provider = resolve_provider(str(body.get("provider", "rule")))
        kind = classify_query(question, provider)
        if kind == INVESTIGATIVE:
            budget = int(body.get("budget", 8))
            trace = run_investigation(question, graph, provider, budget=budget)
            trace_id = new_run_id()
            payload = trace.to_dict()
            store.save_trace(run_id, trace_id, payload)
            return {
                "class": kind,
                "trace_id": trace_id,
                "answer": trace.final_summary,
                "verdict": payload["verdict"],
                "trace": payload,
            }
        result = run_qa_chain(question, graph, provider, max_retries=int(body.get("max_retries", 3)))
        return {
            "class": kind,
            "answer": result.answer_text,
            "structured": result.structured,
            "evidence": [e.to_dict() for e in result.evidence],
        }

    @app.get("/v1/runs/{run_id}/investigations/{trace_id}")
    def get_trace(run_id: str, trace_id: str):
        return store.load_trace(run_id, trace_id)

    if console_dir and Path(console_dir).exists():
        app.mount("/console", StaticFiles(directory=str(console_dir), html=True), name="console")

    return app
