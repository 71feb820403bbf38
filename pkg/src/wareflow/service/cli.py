"""Command-line interface over the run store and pipeline."""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from wareflow.agent.classify import INVESTIGATIVE, classify_query
from wareflow.agent.chain import run_qa_chain
from wareflow.agent.investigation import run_investigation
from wareflow.cypher import evaluate_query, parse_query
from wareflow.errors import ConfigInvalid, WareflowError
from wareflow.graph import export_graph_cypher, export_graph_jsonl
from wareflow.service.evalharness import eval_pass_at_k
from wareflow.service.providers import resolve_provider
from wareflow.service.runs import RunStore, new_run_id
from wareflow.sim import export_traces_csv, validate_config
from wareflow.sim.config import SimConfig, scenario_from_dict


def domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except WareflowError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _load_config(config_path, seed, scenario) -> SimConfig:
    data = {}
    if config_path:
        data = json.loads(Path(config_path).read_text(encoding="utf-8"))
        if "config" in data and isinstance(data["config"], dict):
            data = data["config"]
    if seed is not None:
        data["seed"] = seed
    config = SimConfig.from_dict(data)
    if scenario:
        spec = scenario_from_dict(json.loads(scenario))
        config = SimConfig.from_dict({**config.to_dict(), "scenario": None})
        from wareflow.sim import apply_scenario

        config = apply_scenario(config, spec)
    violations = validate_config(config)
    if violations:
        raise ConfigInvalid(violations)
    return config


def _emit(payload, fmt: str):
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        _print_table(payload)


def _print_table(payload, indent=""):
    if isinstance(payload, dict) and set(payload) == {"columns", "rows"}:
        click.echo(indent + " | ".join(str(c) for c in payload["columns"]))
        for row in payload["rows"]:
            click.echo(indent + " | ".join(str(v) for v in row))
        return
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                click.echo(f"{indent}{key}:")
                _print_table(value, indent + "  ")
            else:
                click.echo(f"{indent}{key}: {value}")
        return
    if isinstance(payload, list):
        for item in payload:
            _print_table(item, indent + "  ")
        return
    click.echo(f"{indent}{payload}")


@click.group()
@click.option("--runs-dir", envvar="WAREFLOW_RUNS_DIR", default="./runs", show_default=True, help="Run artifact directory.")
@click.pass_context
def main(ctx, runs_dir):
    """Warehouse discharge-flow simulation and analysis."""
    ctx.obj = RunStore(Path(runs_dir))


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), help="Config JSON file.")
@click.option("--seed", type=int, default=None, help="Override the random seed.")
@click.option("--scenario", default=None, help='Scenario JSON, e.g. {"kind": "degraded_forklift", "forklift_id": "FL_00", "slowdown_factor": 1.8}.')
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.pass_obj
@domain_errors
def simulate(store, config_path, seed, scenario, fmt):
    """Create a run and execute the simulation."""
    config = _load_config(config_path, seed, scenario)
    record = store.create(config)
    store.simulate(record.run_id)
    log = store.load_log(record.run_id)
    _emit({"run_id": record.run_id, "status": "simulated", "packages": len(log.packages)}, fmt)


@main.command("build-kg")
@click.option("--run", "run_id", required=True, help="Run id.")
@click.option("--force", is_flag=True, help="Rebuild even if already graphed.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.pass_obj
@domain_errors
def build_kg(store, run_id, force, fmt):
    """Build the knowledge graph for a simulated run."""
    record = store.build_graph(run_id, force=force)
    graph = store.load_graph(run_id)
    _emit({"run_id": run_id, "status": record.status, "nodes": graph.node_count(), "edges": graph.edge_count()}, fmt)


@main.command()
@click.argument("query_text")
@click.option("--run", "run_id", required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table", show_default=True)
@click.pass_obj
@domain_errors
def query(store, query_text, run_id, fmt):
    """Evaluate a raw subset query against a run's graph."""
    graph = store.load_graph(run_id)
    table = evaluate_query(parse_query(query_text), graph)
    _emit(table.to_dict(datetimes="iso"), fmt)


@main.command()
@click.argument("question")
@click.option("--run", "run_id", required=True)
@click.option("--provider", default="rule", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.pass_obj
@domain_errors
def ask(store, question, run_id, provider, fmt):
    """Classify a question and run the matching pipeline."""
    graph = store.load_graph(run_id)
    planner = resolve_provider(provider)
    kind = classify_query(question, planner)
    if kind == INVESTIGATIVE:
        trace = run_investigation(question, graph, planner)
        trace_id = new_run_id()
        store.save_trace(run_id, trace_id, trace.to_dict())
        _emit({"class": kind, "trace_id": trace_id, "answer": trace.final_summary, "verdict": trace.verdict.to_dict()}, fmt)
    else:
        result = run_qa_chain(question, graph, planner)
        _emit({"class": kind, "answer": result.answer_text, "structured": result.structured}, fmt)


@main.command()
@click.argument("question")
@click.option("--run", "run_id", required=True)
@click.option("--provider", default="rule", show_default=True)
@click.option("--budget", type=int, default=8, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.pass_obj
@domain_errors
def investigate(store, question, run_id, provider, budget, fmt):
    """Force the investigative pipeline regardless of classification."""
    graph = store.load_graph(run_id)
    planner = resolve_provider(provider)
    trace = run_investigation(question, graph, planner, budget=budget)
    trace_id = new_run_id()
    store.save_trace(run_id, trace_id, trace.to_dict())
    _emit({"trace_id": trace_id, **trace.to_dict()}, fmt)


@main.command("eval")
@click.option("--run", "run_id", required=True)
@click.option("--provider", default="rule", show_default=True)
@click.option("-n", "--attempts", type=int, default=2, show_default=True)
@click.option("-k", "--k-list", default="1,2", show_default=True, help="Comma-separated k values.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True)
@click.pass_obj
@domain_errors
def eval_command(store, run_id, provider, attempts, k_list, fmt):
    """pass@k scoring of the pipeline against the analytics oracle."""
    ks = tuple(int(part) for part in k_list.split(","))
    if attempts < max(ks):
        raise click.UsageError(f"attempts ({attempts}) must be >= max k ({max(ks)})")
    log = store.load_log(run_id)
    graph = store.load_graph(run_id)
    planner = resolve_provider(provider)
    report = eval_pass_at_k(log, graph, planner, attempts=attempts, k_list=ks)
    _emit(report.to_dict(), fmt)


@main.command()
@click.option("--run", "run_id", required=True)
@click.option("--what", type=click.Choice(["log", "graph"]), default="log", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["jsonl", "csv", "cypher"]), default="jsonl", show_default=True)
@click.option("-o", "--output", type=click.Path(), default=None, help="Output file (stdout when omitted).")
@click.pass_obj
@domain_errors
def export(store, run_id, what, fmt, output):
    """Export a run's log or graph."""
    if what == "log":
        if fmt == "csv":
            blob = export_traces_csv(store.load_log(run_id))
        elif fmt == "jsonl":
            blob = store.log_path(run_id).read_bytes()
        else:
            raise click.UsageError("logs export as jsonl or csv")
    else:
        graph = store.load_graph(run_id)
        if fmt == "cypher":
            blob = export_graph_cypher(graph)
        elif fmt == "jsonl":
            blob = export_graph_jsonl(graph)
        else:
            raise click.UsageError("graphs export as jsonl or cypher")
    if output:
        Path(output).write_bytes(blob)
        click.echo(f"wrote {len(blob)} bytes to {output}")
    else:
        click.echo(blob.decode("utf-8"), nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--console", "console_dir", type=click.Path(), default=None, help="Static console bundle to mount at /console.")
@click.pass_context
def serve(ctx, host, port, console_dir):
    """Serve the HTTP API."""
    import uvicorn

    from wareflow.service.app import create_app

    app = create_app(runs_dir=ctx.obj.root, console_dir=Path(console_dir) if console_dir else None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
