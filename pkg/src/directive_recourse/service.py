"""HTTP API for the what-if dashboard.

One endpoint per engine capability: prediction, what-if reassessment, PDP
curves, counterfactuals, flipsets, plans, explanations, and sessions. The
engine state (model, catalog, templates) is immutable after startup; sessions
are the only mutable state and their writes serialize per session id.
"""

from __future__ import annotations

import json
from typing import Mapping

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from .config import SessionStore
from .counterfactual import ActionGrid, diverse_counterfactuals, min_cost_flipset
from .errors import InfeasibleError, NoRecourseError, SchemaError, StateCapError
from .explainer import TemplateSet, load_templates
from .io import load_catalog, load_model
from .model import LinearModel, MadWeights, classify, pdp_curve, pdp_threshold, predict_proba
from .pipeline import explain_profile, plan_for, search_grid_for
from .planner import ActionCatalog, reachability, policy_cost, simulate_policy

Profile = dict[str, float]


class PredictRequest(BaseModel):
    profile: Profile


class PredictResponse(BaseModel):
    label: int
    probability: float


class WhatIfRequest(BaseModel):
    profile: Profile | None = None
    session_id: str | None = None
    edits: Profile = Field(default_factory=dict)
    commit: bool = False


class WhatIfResponse(BaseModel):
    label: int
    probability: float
    profile: Profile


class PdpPoint(BaseModel):
    value: float
    probability: float


class PdpResponse(BaseModel):
    feature: str
    points: list[PdpPoint]
    threshold: float | None


class CounterfactualsRequest(BaseModel):
    profile: Profile
    desired: int = 1
    k: int = 1
    grid_steps: dict[str, float] | None = None
    grid_features: list[str] | None = None


class CounterfactualItem(BaseModel):
    target: Profile
    distance: float
    changed: list[str]
    achieved_label: int


class CounterfactualsResponse(BaseModel):
    counterfactuals: list[CounterfactualItem]


class FlipsetRequest(BaseModel):
    profile: Profile
    desired: int = 1
    action_grid: list[dict] | dict
    budget: float | None = None


class FlipsetResponse(BaseModel):
    deltas: Profile | None
    total_cost: float | None
    feasible: bool


class PlanRequest(BaseModel):
    profile: Profile
    desired: int = 1
    solver: str = "vi"
    seed: int = 0


class PlanActionItem(BaseModel):
    name: str
    class_tag: str | None
    cost: float


class PlanResponse(BaseModel):
    actions: list[PlanActionItem]
    reachability: float
    expected_cost: float | None
    goal_label: int
    boundary: bool


class ExplainRequest(BaseModel):
    profile: Profile
    desired: int = 1
    kind: str = "all"
    seed: int = 0


class ExplanationTextItem(BaseModel):
    kind: str
    text: str
    word_count: int
    clauses: dict[str, str | None]


class ExplainResponse(BaseModel):
    y: int
    y_prime: int
    boundary: bool
    unreachable: bool
    texts: list[ExplanationTextItem]


class SessionCreateRequest(BaseModel):
    profile: Profile


class SessionResponse(BaseModel):
    id: str
    profile: Profile
    history_length: int


class SessionDetailResponse(BaseModel):
    id: str
    profile: Profile
    history: list[dict]


class SchemaResponse(BaseModel):
    schema_: dict = Field(alias="schema")
    default_profile: Profile | None

    model_config = {"populate_by_name": True}


def build_app(
    model: LinearModel | str | None = None,
    catalog: ActionCatalog | str | None = None,
    templates: TemplateSet | str | None = None,
    model_path: str | None = None,
    catalog_path: str | None = None,
    templates_path: str | None = None,
    session_log: str | None = None,
    seed: int = 0,
    state_cap: int = 100_000,
    default_profile: Mapping[str, float] | None = None,
) -> FastAPI:
    model = load_model(model_path) if model_path else (load_model(model) if isinstance(model, str) else model)
    catalog = load_catalog(catalog_path) if catalog_path else (load_catalog(catalog) if isinstance(catalog, str) else catalog)
    templates = (
        load_templates(templates_path)
        if templates_path
        else (load_templates(templates) if isinstance(templates, str) else templates)
    )
    if model is None:
        raise ValueError("a model is required to serve")
    catalog = catalog or ActionCatalog(actions=())
    templates = templates or TemplateSet.generic()
    store = SessionStore(session_log)

    app = FastAPI(title="directive-recourse", version="0.1.0")

    def _validated(profile: Mapping[str, float]) -> Profile:
        p = {str(k): float(v) for k, v in profile.items()}
        model.schema.validate_vector(p)
        return p

    def _http_error(exc: Exception) -> HTTPException:
        if isinstance(exc, (InfeasibleError, NoRecourseError, StateCapError)):
            return HTTPException(status_code=422, detail=str(exc))
        return HTTPException(status_code=400, detail=str(exc))

    @app.get("/schema", response_model=SchemaResponse, response_model_by_alias=True)
    def schema() -> SchemaResponse:
        from .schema import schema_to_dict

        return SchemaResponse(
            schema=schema_to_dict(model.schema),
            default_profile=dict(default_profile) if default_profile else None,
        )

    @app.post("/predict", response_model=PredictResponse)
    def predict(req: PredictRequest) -> PredictResponse:
        try:
            p = _validated(req.profile)
            return PredictResponse(label=classify(model, p), probability=predict_proba(model, p))
        except SchemaError as exc:
            raise _http_error(exc)

    @app.post("/whatif", response_model=WhatIfResponse)
    def whatif(req: WhatIfRequest) -> WhatIfResponse:
        try:
            if req.session_id is not None:
                try:
                    base = dict(store.get(req.session_id).profile)
                except KeyError:
                    raise HTTPException(status_code=404, detail="unknown session")
            elif req.profile is not None:
                base = dict(req.profile)
            else:
                raise SchemaError("whatif requires a profile or a session_id")
            base.update(req.edits)
            p = _validated(base)
            label = classify(model, p)
            proba = predict_proba(model, p)
            if req.commit and req.session_id is not None:
                store.record(req.session_id, "whatif", {"edits": req.edits, "label": label}, commit_profile=p)
            return WhatIfResponse(label=label, probability=proba, profile=p)
        except SchemaError as exc:
            raise _http_error(exc)

    @app.get("/pdp/{feature}", response_model=PdpResponse)
    def pdp(feature: str, profile: str = Query(...), grid_size: int = Query(101, ge=2)) -> PdpResponse:
        try:
            p = _validated(json.loads(profile))
            if feature not in model.schema.by_name:
                raise HTTPException(status_code=404, detail=f"unknown feature {feature!r}")
            points = [PdpPoint(value=v, probability=pr) for v, pr in pdp_curve(model, p, feature, grid_size)]
            boundary = pdp_threshold(model, p, feature)
            return PdpResponse(feature=feature, points=points, threshold=boundary)
        except (SchemaError, ValueError, json.JSONDecodeError) as exc:
            raise _http_error(exc)

    @app.post("/counterfactuals", response_model=CounterfactualsResponse)
    def counterfactuals(req: CounterfactualsRequest) -> CounterfactualsResponse:
        try:
            p = _validated(req.profile)
            grid = search_grid_for(model, steps=req.grid_steps, features=req.grid_features)
            found = diverse_counterfactuals(model, p, req.desired, grid, MadWeights.uniform(model.schema), req.k)
            return CounterfactualsResponse(
                counterfactuals=[
                    CounterfactualItem(
                        target=dict(cf.target),
                        distance=cf.distance,
                        changed=sorted(cf.changed),
                        achieved_label=cf.achieved_label,
                    )
                    for cf in found
                ]
            )
        except (SchemaError, NoRecourseError, ValueError) as exc:
            raise _http_error(exc)

    @app.post("/flipset", response_model=FlipsetResponse)
    def flipset(req: FlipsetRequest) -> FlipsetResponse:
        try:
            p = _validated(req.profile)
            grid = ActionGrid.from_json_obj(req.action_grid)
            fs = min_cost_flipset(model, p, req.desired, grid, budget=req.budget)
            if fs is None:
                return FlipsetResponse(deltas=None, total_cost=None, feasible=False)
            return FlipsetResponse(deltas=dict(fs.deltas), total_cost=fs.total_cost, feasible=True)
        except (SchemaError, NoRecourseError, ValueError, KeyError) as exc:
            raise _http_error(exc)

    @app.post("/plan", response_model=PlanResponse)
    def plan(req: PlanRequest) -> PlanResponse:
        try:
            p = _validated(req.profile)
            y = classify(model, p)
            boundary = y == req.desired
            goal = (1 - req.desired) if boundary else req.desired
            planned = plan_for(model, catalog, p, goal, solver=req.solver, seed=req.seed, state_cap=state_cap)
            if planned is None:
                raise InfeasibleError("no action applies at the initial state")
            mdp, policy = planned
            traj = simulate_policy(mdp, policy, seed=req.seed)
            items = []
            for name in traj.actions:
                action = mdp.catalog.by_name(name)
                items.append(PlanActionItem(name=action.name, class_tag=action.class_tag, cost=action.cost))
            reach = reachability(mdp, policy)
            cost = policy_cost(mdp, policy)
            return PlanResponse(
                actions=items,
                reachability=reach,
                expected_cost=None if cost != cost or cost == float("inf") else cost,
                goal_label=goal,
                boundary=boundary,
            )
        except (SchemaError, ValueError) as exc:
            raise _http_error(exc)
        except (InfeasibleError, StateCapError) as exc:
            raise _http_error(exc)

    @app.post("/explain", response_model=ExplainResponse)
    def explain(req: ExplainRequest) -> ExplainResponse:
        try:
            p = _validated(req.profile)
            result = explain_profile(
                model, catalog, templates, p,
                desired=req.desired, kinds=req.kind, seed=req.seed, state_cap=state_cap,
            )
            de = result.explanation
            return ExplainResponse(
                y=de.y,
                y_prime=de.y_prime,
                boundary=de.boundary,
                unreachable=de.unreachable,
                texts=[
                    ExplanationTextItem(
                        kind=t.kind,
                        text=t.text,
                        word_count=t.word_count,
                        clauses=t.to_dict()["clauses"],
                    )
                    for t in result.texts
                ],
            )
        except (SchemaError, ValueError) as exc:
            raise _http_error(exc)
        except (InfeasibleError, NoRecourseError, StateCapError) as exc:
            raise _http_error(exc)

    @app.post("/sessions", response_model=SessionResponse)
    def create_session(req: SessionCreateRequest) -> SessionResponse:
        try:
            p = _validated(req.profile)
        except SchemaError as exc:
            raise _http_error(exc)
        session = store.create(p)
        return SessionResponse(id=session.id, profile=session.profile, history_length=len(session.history))

    @app.get("/sessions/{session_id}", response_model=SessionDetailResponse)
    def get_session(session_id: str) -> SessionDetailResponse:
        try:
            session = store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session")
        return SessionDetailResponse(id=session.id, profile=session.profile, history=session.history)

    return app
