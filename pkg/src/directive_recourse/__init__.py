"""Recourse engine for linear classifiers.

Given a classifier and an instance it rejects, the engine computes
counterfactual target states, minimum-cost actionable changes, and a policy of
concrete actions reaching a target state, then renders non-directive,
directive-specific, and directive-generic explanations.
"""

from .counterfactual import (
    ActionGrid,
    Counterfactual,
    DeltaMenu,
    FlipSet,
    SearchGrid,
    diverse_counterfactuals,
    min_cost_flipset,
    nearest_counterfactual,
    weighted_distance,
)
from .errors import (
    CatalogError,
    InfeasibleError,
    NoRecourseError,
    SchemaError,
    StateCapError,
    TemplateError,
)
from .explainer import (
    DirectiveExplanation,
    ExplanationText,
    TemplateSet,
    assemble,
    balance_filler,
    generic_class_of,
    render,
)
from .model import (
    LinearModel,
    MadWeights,
    classify,
    mad_weights,
    pdp_curve,
    pdp_threshold,
    predict_proba,
    train_logistic,
    training_accuracy,
)
from .pipeline import ExplainResult, explain_profile, plan_for, search_grid_for
from .planner import (
    Action,
    ActionCatalog,
    Outcome,
    Policy,
    RecourseMdp,
    Trajectory,
    build_recourse_mdp,
    policy_cost,
    q_learning,
    reachability,
    simulate_policy,
    value_iteration,
)
from .schema import FeatureSchema, FeatureSpec

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionCatalog",
    "ActionGrid",
    "CatalogError",
    "Counterfactual",
    "DeltaMenu",
    "DirectiveExplanation",
    "ExplainResult",
    "ExplanationText",
    "FeatureSchema",
    "FeatureSpec",
    "FlipSet",
    "InfeasibleError",
    "LinearModel",
    "MadWeights",
    "NoRecourseError",
    "Outcome",
    "Policy",
    "RecourseMdp",
    "SchemaError",
    "SearchGrid",
    "StateCapError",
    "TemplateError",
    "TemplateSet",
    "Trajectory",
    "assemble",
    "balance_filler",
    "build_recourse_mdp",
    "classify",
    "diverse_counterfactuals",
    "explain_profile",
    "generic_class_of",
    "mad_weights",
    "min_cost_flipset",
    "nearest_counterfactual",
    "pdp_curve",
    "pdp_threshold",
    "plan_for",
    "policy_cost",
    "predict_proba",
    "q_learning",
    "reachability",
    "render",
    "search_grid_for",
    "simulate_policy",
    "train_logistic",
    "training_accuracy",
    "value_iteration",
    "weighted_distance",
]
