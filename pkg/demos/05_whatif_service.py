"""Drive the what-if HTTP API end to end, in process.

The same app that `directive-recourse serve` binds to a port is exercised here
through the test client: live reassessment as feature values change, PDP
curves for charting, a session with a committed edit, and the explanation
triple. Requires the dev extras (httpx).
"""

import json

from fastapi.testclient import TestClient

from directive_recourse.explainer import TemplateSet
from directive_recourse.fixtures import lending_demo
from directive_recourse.service import build_app

demo = lending_demo()
app = build_app(
    model=demo.model,
    catalog=demo.catalog,
    templates=TemplateSet.from_json_obj(demo.templates),
    session_log="demo_sessions.ndjson",
)
client = TestClient(app)
profile = dict(demo.profile)

print("=== Live reassessment while dragging the income slider ===")
for income in (30_000, 38_000, 42_000, 43_000, 50_000):
    body = client.post("/whatif", json={"profile": profile, "edits": {"income": income}}).json()
    badge = "APPROVE" if body["label"] == 1 else "DENY"
    print(f"  income ${income:>6,} -> {badge} (p={body['probability']:.3f})")

print("\n=== PDP curve for the chart (first and last of 101 points) ===")
pdp = client.get("/pdp/income", params={"profile": json.dumps(profile), "grid_size": 101}).json()
print(f"  boundary marker at ${pdp['threshold']:,.1f}")
print(f"  first point {pdp['points'][0]}, last point {pdp['points'][-1]}")

print("\n=== Plan panel ===")
plan = client.post("/plan", json={"profile": profile, "desired": 1, "solver": "vi"}).json()
for a in plan["actions"]:
    print(f"  do: {a['name']} (cost {a['cost']:.0f}, class: {a['class_tag']})")
print(f"  reachability {plan['reachability']:.0%}, expected cost {plan['expected_cost']:.0f}")

print("\n=== Explanation triple ===")
exp = client.post("/explain", json={"profile": profile, "desired": 1, "kind": "all"}).json()
for t in exp["texts"]:
    print(f"  [{t['kind']}] {t['text']}")

print("\n=== Sessions keep an audit trail of committed edits ===")
session = client.post("/sessions", json={"profile": profile}).json()
client.post("/whatif", json={"session_id": session["id"], "edits": {"income": 43_000}, "commit": True})
detail = client.get(f"/sessions/{session['id']}").json()
print(f"  history length {len(detail['history'])}, current income ${detail['profile']['income']:,.0f}")
print("  (see demo_sessions.ndjson for the append-only log)")
