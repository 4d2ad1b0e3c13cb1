"""End-to-end composition: counterfactual target, plan, rendered explanations.

This is the engine behind both the command line and the HTTP service. Given a
model, catalog, templates, and a profile, it finds the counterfactual target
state, plans actions toward it, assembles the explanation tuple, and renders
the requested explanation kinds with length balancing across the triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .counterfactual import SearchGrid, nearest_counterfactual
from .errors import InfeasibleError
from .explainer import (
    KINDS,
    DirectiveExplanation,
    ExplanationText,
    TemplateSet,
    assemble,
    balance_filler,
    render,
)
from .model import LinearModel, MadWeights, classify
from .planner import ActionCatalog, Policy, RecourseMdp, build_recourse_mdp, q_learning, value_iteration


@dataclass(frozen=True)
class ExplainResult:
    explanation: DirectiveExplanation
    texts: tuple[ExplanationText, ...]

    def text_for(self, kind: str) -> ExplanationText:
        for t in self.texts:
            if t.kind == kind:
                return t
        raise KeyError(kind)


def search_grid_for(
    model: LinearModel,
    steps: Mapping[str, float] | None = None,
    features: Sequence[str] | None = None,
) -> SearchGrid:
    """Grid from the model's embedded search metadata plus caller overrides."""
    meta = model.metadata.get("search", {}) if isinstance(model.metadata, Mapping) else {}
    grid_features = list(features) if features is not None else list(meta.get("features", ())) or None
    grid_steps = dict(meta.get("steps", {}))
    grid_steps.update(steps or {})
    return SearchGrid.from_schema(model.schema, steps=grid_steps, features=grid_features)


def plan_for(
    model: LinearModel,
    catalog: ActionCatalog,
    x: Mapping[str, float],
    goal_label: int,
    solver: str = "vi",
    seed: int = 0,
    discount: float = 0.95,
    epsilon: float = 1e-6,
    state_cap: int = 100_000,
    episodes: int = 10_000,
) -> tuple[RecourseMdp, Policy] | None:
    """Build and solve the recourse MDP; None when no action applies at the start."""
    if not catalog.actions:
        return None
    try:
        mdp = build_recourse_mdp(
            model.schema, catalog, model, x, goal_label,
            discount=discount, state_cap=state_cap,
        )
    except InfeasibleError:
        return None
    if solver == "vi":
        policy = value_iteration(mdp, epsilon=epsilon)
    elif solver == "q":
        policy = q_learning(mdp, episodes=episodes, seed=seed)
    else:
        raise ValueError(f"unknown solver {solver!r}; expected 'vi' or 'q'")
    return mdp, policy


def explain_profile(
    model: LinearModel,
    catalog: ActionCatalog,
    templates: TemplateSet,
    x: Mapping[str, float],
    desired: int = 1,
    kinds: Sequence[str] | str = "all",
    weights: MadWeights | None = None,
    grid: SearchGrid | None = None,
    solver: str = "vi",
    seed: int = 0,
    state_cap: int = 100_000,
) -> ExplainResult:
    """Full pipeline for one profile.

    A profile already holding the desired label gets a boundary explanation:
    the counterfactual (and any plan) then describes the hypothetical opposite
    decision. Directive kinds require a plan whose first action is defined and
    whose goal is reachable; requesting one without a usable plan raises
    InfeasibleError.
    """
    schema = model.schema
    schema.validate_vector(x)
    y = classify(model, x)
    boundary = y == desired
    goal_label = (1 - desired) if boundary else desired

    if grid is None:
        grid = search_grid_for(model)
    if weights is None:
        weights = MadWeights.uniform(schema)

    cf = nearest_counterfactual(model, x, goal_label, grid, weights)
    if cf is None:
        raise InfeasibleError("no grid point reaches the requested label")

    planned = plan_for(model, catalog, x, goal_label, solver=solver, seed=seed, state_cap=state_cap)
    mdp, policy = planned if planned is not None else (None, None)
    de = assemble(
        model, x, cf, desired, policy=policy, mdp=mdp,
        provenance={
            "grid": {k: list(v) for k, v in grid.values.items()},
            "catalog": [a.name for a in catalog.actions],
            "solver": solver if planned is not None else None,
        },
    )

    requested = list(KINDS) if kinds == "all" else ([kinds] if isinstance(kinds, str) else list(kinds))
    for kind in requested:
        if kind not in KINDS:
            raise ValueError(f"unknown explanation kind {kind!r}")
    directive_requested = [k for k in requested if k != "non-directive"]
    if directive_requested and (de.first_action_name is None or de.unreachable):
        raise InfeasibleError("directive explanation requested but no plan reaches the goal state")

    rendered: dict[str, ExplanationText] = {k: render(de, k, templates) for k in requested}
    if "non-directive" in rendered and directive_requested:
        references = [rendered[k] for k in directive_requested]
        rendered["non-directive"] = balance_filler(
            rendered["non-directive"], references, filler_pool=templates.filler_pool
        )
    return ExplainResult(explanation=de, texts=tuple(rendered[k] for k in requested))
