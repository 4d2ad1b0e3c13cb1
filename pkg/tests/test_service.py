import json

import pytest
from fastapi.testclient import TestClient

from golden_texts import GOLDEN
from directive_recourse.explainer import TemplateSet
from directive_recourse.fixtures import lending_demo
from directive_recourse.model import pdp_threshold
from directive_recourse.service import build_app


@pytest.fixture(scope="module")
def bundle():
    return lending_demo()


@pytest.fixture()
def client(bundle, tmp_path):
    app = build_app(
        model=bundle.model,
        catalog=bundle.catalog,
        templates=TemplateSet.from_json_obj(bundle.templates),
        session_log=str(tmp_path / "sessions.ndjson"),
    )
    return TestClient(app)


def test_schema_endpoint_serves_feature_metadata(bundle):
    app = build_app(
        model=bundle.model,
        catalog=bundle.catalog,
        templates=TemplateSet.from_json_obj(bundle.templates),
        default_profile=bundle.profile,
    )
    r = TestClient(app).get("/schema")
    assert r.status_code == 200
    body = r.json()
    names = [f["name"] for f in body["schema"]["features"]]
    assert "income" in names
    income = next(f for f in body["schema"]["features"] if f["name"] == "income")
    assert income["bounds"] == [0, 200000]
    assert body["default_profile"]["income"] == 30000


def test_predict_denies_scenario3_profile(client, bundle):
    r = client.post("/predict", json={"profile": bundle.profile})
    assert r.status_code == 200
    body = r.json()
    assert body["label"] == 0
    assert 0.0 < body["probability"] < 0.5


def test_predict_rejects_malformed_profile(client, bundle):
    r = client.post("/predict", json={"profile": {"income": 1}})
    assert r.status_code == 400


def test_whatif_income_edit_flips_decision(client, bundle):
    r = client.post("/whatif", json={"profile": bundle.profile, "edits": {"income": 43000}})
    assert r.status_code == 200
    body = r.json()
    assert body["label"] == 1
    assert body["profile"]["income"] == 43000


def test_pdp_income_brackets_boundary(client, bundle):
    r = client.get("/pdp/income", params={"profile": json.dumps(dict(bundle.profile)), "grid_size": 101})
    assert r.status_code == 200
    body = r.json()
    assert body["feature"] == "income"
    assert len(body["points"]) == 101
    assert body["threshold"] == pytest.approx(pdp_threshold(bundle.model, bundle.profile, "income"), abs=1e-6)
    below = [p for p in body["points"] if p["value"] < 42000]
    above = [p for p in body["points"] if p["value"] > 43000]
    assert all(p["probability"] < 0.5 for p in below)
    assert all(p["probability"] >= 0.5 for p in above)


def test_pdp_unknown_feature_404(client, bundle):
    r = client.get("/pdp/nope", params={"profile": json.dumps(dict(bundle.profile))})
    assert r.status_code == 404


def test_counterfactuals_endpoint(client, bundle):
    r = client.post("/counterfactuals", json={"profile": bundle.profile, "desired": 1, "k": 2})
    assert r.status_code == 200
    cfs = r.json()["counterfactuals"]
    assert len(cfs) == 1  # only income is searchable in the demo grid
    assert cfs[0]["target"]["income"] == 43000
    assert cfs[0]["changed"] == ["income"]
    assert cfs[0]["achieved_label"] == 1


def test_flipset_endpoint(client, bundle):
    grid = [{"feature": "income", "deltas": [13000, 20000], "unit_cost": 0.001}]
    r = client.post("/flipset", json={"profile": bundle.profile, "desired": 1, "action_grid": grid})
    assert r.status_code == 200
    body = r.json()
    assert body["feasible"]
    assert body["deltas"] == {"income": 13000}
    assert body["total_cost"] == pytest.approx(13.0)


def test_plan_endpoint(client, bundle):
    r = client.post("/plan", json={"profile": bundle.profile, "desired": 1, "solver": "vi"})
    assert r.status_code == 200
    body = r.json()
    assert body["actions"][0]["name"] == "getting a promotion, a secondary job, or finding a new job"
    assert body["reachability"] == pytest.approx(1.0)
    assert body["expected_cost"] == pytest.approx(5.0)
    assert body["goal_label"] == 1
    assert body["boundary"] is False


def test_explain_endpoint_returns_golden_triple(client, bundle):
    r = client.post("/explain", json={"profile": bundle.profile, "desired": 1, "kind": "all"})
    assert r.status_code == 200
    body = r.json()
    assert body["y"] == 0 and body["y_prime"] == 1
    assert tuple(t["text"] for t in body["texts"]) == GOLDEN[3]
    for t in body["texts"]:
        assert set(t["clauses"]) == {"decision", "global", "counterfactual", "filler", "action"}


def test_sessions_roundtrip_and_commit_semantics(client, bundle):
    created = client.post("/sessions", json={"profile": bundle.profile}).json()
    sid = created["id"]

    # A non-committing what-if must not touch session state.
    r = client.post("/whatif", json={"session_id": sid, "edits": {"income": 43000}})
    assert r.json()["label"] == 1
    detail = client.get(f"/sessions/{sid}").json()
    assert detail["history"] == []
    assert detail["profile"]["income"] == 30000

    # A committing what-if appends exactly one history entry.
    r = client.post("/whatif", json={"session_id": sid, "edits": {"income": 43000}, "commit": True})
    assert r.status_code == 200
    detail = client.get(f"/sessions/{sid}").json()
    assert len(detail["history"]) == 1
    assert detail["profile"]["income"] == 43000


def test_session_log_is_append_only_ndjson(bundle, tmp_path):
    log = tmp_path / "sessions.ndjson"
    app = build_app(model=bundle.model, catalog=bundle.catalog,
                    templates=TemplateSet.from_json_obj(bundle.templates), session_log=str(log))
    client = TestClient(app)
    sid = client.post("/sessions", json={"profile": bundle.profile}).json()["id"]
    client.post("/whatif", json={"session_id": sid, "edits": {"income": 43000}, "commit": True})
    lines = [json.loads(line) for line in log.read_text().splitlines()]
    assert len(lines) == 2
    assert lines[0]["event"] == "create"
    assert lines[1]["event"] == "whatif"


def test_unknown_session_404(client):
    assert client.get("/sessions/nope").status_code == 404
    r = client.post("/whatif", json={"session_id": "nope", "edits": {}})
    assert r.status_code == 404
