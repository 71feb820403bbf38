import json

import pytest
from fastapi.testclient import TestClient

from wareflow.service.app import create_app
from wareflow.sim import default_config


@pytest.fixture()
def client(tmp_path):
    app = create_app(runs_dir=tmp_path / "runs")
    with TestClient(app) as c:
        yield c


def make_graphed_run(client, config=None) -> str:
    body = {"config": config or {"seed": 7}}
    run_id = client.post("/v1/runs", json=body).json()["run_id"]
    assert client.post(f"/v1/runs/{run_id}/simulate", json={}).status_code == 200
    assert client.post(f"/v1/runs/{run_id}/graph", json={}).status_code == 200
    return run_id


class TestRunLifecycle:
    def test_health(self, client):
        assert client.get("/v1/health").json()["status"] == "ok"

    def test_create_returns_201_and_id(self, client):
        response = client.post("/v1/runs", json={})
        assert response.status_code == 201
        body = response.json()
        assert len(body["run_id"]) == 26
        assert body["status"] == "created"

    def test_invalid_config_400(self, client):
        response = client.post("/v1/runs", json={"config": {"workers": 10, "team_size": 4}})
        assert response.status_code == 400
        assert response.json()["error"] == "CONFIG_INVALID"
        assert response.json()["violations"][0]["code"] == "TEAM_DIVISIBILITY"

    def test_unknown_run_404(self, client):
        assert client.get("/v1/runs/NOPE").status_code == 404
        assert client.post("/v1/runs/NOPE/simulate", json={}).status_code == 404

    def test_simulate_twice_409(self, client):
        run_id = client.post("/v1/runs", json={}).json()["run_id"]
        assert client.post(f"/v1/runs/{run_id}/simulate", json={}).status_code == 200
        assert client.post(f"/v1/runs/{run_id}/simulate", json={}).status_code == 409
        assert client.post(f"/v1/runs/{run_id}/simulate", json={"force": True}).status_code == 200

    def test_graph_requires_simulation(self, client):
        run_id = client.post("/v1/runs", json={}).json()["run_id"]
        assert client.post(f"/v1/runs/{run_id}/graph", json={}).status_code == 409

    def test_log_round_trip(self, client):
        from wareflow.sim import export_log, run_simulation

        run_id = client.post("/v1/runs", json={"config": {"seed": 5}}).json()["run_id"]
        client.post(f"/v1/runs/{run_id}/simulate", json={})
        body = client.get(f"/v1/runs/{run_id}/log").content
        header = json.loads(body.decode().splitlines()[0])
        assert header["format"] == "wareflow-log"
        # served bytes equal a fresh local export of the same config
        assert body == export_log(run_simulation(default_config(seed=5)))

    def test_state_machine_in_record(self, client):
        run_id = make_graphed_run(client)
        assert client.get(f"/v1/runs/{run_id}").json()["status"] == "graphed"

    def test_list_runs(self, client):
        a = client.post("/v1/runs", json={}).json()["run_id"]
        b = client.post("/v1/runs", json={}).json()["run_id"]
        ids = [r["run_id"] for r in client.get("/v1/runs").json()["runs"]]
        assert set(ids) >= {a, b}


class TestAsk:
    def test_operational_question_matches_oracle(self, client):
        from wareflow.analytics import answer_canonical
        from wareflow.service import values_match
        from wareflow.sim import run_simulation

        run_id = make_graphed_run(client)
        response = client.post(f"/v1/runs/{run_id}/ask", json={"question": "How many packages are handled by each forklift?"})
        assert response.status_code == 200
        body = response.json()
        assert body["class"] == "operational"
        oracle = answer_canonical("F17", run_simulation(default_config(seed=7)))
        assert values_match(body["structured"], oracle)

    def test_ask_before_graph_409(self, client):
        run_id = client.post("/v1/runs", json={}).json()["run_id"]
        client.post(f"/v1/runs/{run_id}/simulate", json={})
        response = client.post(f"/v1/runs/{run_id}/ask", json={"question": "How many packages are handled by each forklift?"})
        assert response.status_code == 409

    def test_unmatched_intent_422(self, client):
        run_id = make_graphed_run(client)
        response = client.post(f"/v1/runs/{run_id}/ask", json={"question": "what is the meaning of life"})
        assert response.status_code == 422
        assert response.json()["error"] == "UNMATCHED_INTENT"

    def test_investigative_question_returns_trace(self, client):
        config = {
            "seed": 3,
            "scenario": {"kind": "degraded_forklift", "forklift_id": "FL_00", "slowdown_factor": 1.8},
        }
        run_id = make_graphed_run(client, config)
        response = client.post(
            f"/v1/runs/{run_id}/ask",
            json={"question": "What do the differences in forklift waiting times reveal about the discharge flow?"},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["class"] == "investigative"
        assert body["verdict"]["subject"] == "FL_00"
        trace = client.get(f"/v1/runs/{run_id}/investigations/{body['trace_id']}")
        assert trace.status_code == 200
        stored = trace.json()
        assert stored["main_question"].startswith("What do the differences")
        assert all({"sub_question", "plan", "query_text", "result", "summary"} <= set(e) for e in stored["evidence"])

    def test_unknown_trace_404(self, client):
        run_id = make_graphed_run(client)
        assert client.get(f"/v1/runs/{run_id}/investigations/missing").status_code == 404


class TestExport:
    def test_csv_export(self, client):
        run_id = make_graphed_run(client)
        response = client.get(f"/v1/runs/{run_id}/export", params={"what": "log", "format": "csv"})
        assert response.status_code == 200
        assert response.text.splitlines()[0].startswith("package_id,")

    def test_cypher_export(self, client):
        run_id = make_graphed_run(client)
        response = client.get(f"/v1/runs/{run_id}/export", params={"what": "graph", "format": "cypher-script"})
        assert response.status_code == 200
        assert sum(1 for line in response.text.splitlines() if line.startswith("CREATE (:")) == 47
