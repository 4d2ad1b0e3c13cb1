"""Explanation assembly and rendering.

An assembled explanation pairs the instance, a counterfactual target state,
and (when available) a plan of actions reaching it. Three renderings exist:

* non-directive: counterfactual state only, padded with filler so its length
  matches the directive renderings;
* directive-specific: counterfactual state plus one concrete action;
* directive-generic: counterfactual state plus a general class of actions.

Every rendering follows the same clause grammar: a decision clause, a clause
noting an algorithm was involved, the counterfactual-state clause, and either
filler or an action clause. Scenario template files carry authored wording;
generic slot templates cover arbitrary schemas.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .counterfactual import Counterfactual
from .errors import CatalogError, SchemaError, TemplateError
from .model import LinearModel, classify
from .planner import ActionCatalog, Policy, RecourseMdp, policy_cost, reachability

KINDS = ("non-directive", "directive-specific", "directive-generic")

DEFAULT_FILLER_POOL = (
    "In other words, with that change in place the assessment would have come out the other way.",
    "Everything else in your profile would stay exactly as it is today.",
    "The rest of your details would not need to change at all.",
    "That single difference alone separates the two outcomes.",
)


@dataclass(frozen=True)
class DirectiveExplanation:
    """The assembled explanation tuple plus plan diagnostics."""

    x: Mapping[str, float]
    counterfactual: Counterfactual
    policy: Policy | None
    model: LinearModel
    y: int
    y_prime: int
    boundary: bool = False
    unreachable: bool = False
    first_action_name: str | None = None
    first_action_class: str | None = None
    plan_action_names: tuple[str, ...] = ()
    goal_reachability: float | None = None
    expected_cost: float | None = None
    provenance: Mapping = field(default_factory=dict)


@dataclass(frozen=True)
class ExplanationText:
    kind: str
    decision_clause: str
    global_clause: str
    counterfactual_clause: str
    filler_clause: str | None
    action_clause: str | None
    text: str
    word_count: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "clauses": {
                "decision": self.decision_clause,
                "global": self.global_clause,
                "counterfactual": self.counterfactual_clause,
                "filler": self.filler_clause,
                "action": self.action_clause,
            },
            "text": self.text,
            "word_count": self.word_count,
        }


@dataclass(frozen=True)
class TemplateSet:
    """Authored wording for one scenario, or slot templates for any schema.

    ``kinds`` maps each explanation kind to its clause templates. Directive
    clauses may use the ``{action}`` and ``{class}`` slots, filled from the
    plan; generic templates may additionally use ``{name}``, ``{amount}``,
    ``{boundary}``, ``{direction}`` and ``{unit}`` for the first changed
    feature.
    """

    scenario_id: int | None = None
    global_clause: str = "Your details were supplied to a scoring algorithm"
    decision_clause: str | None = None
    kinds: Mapping[str, Mapping[str, str]] | None = None
    filler_pool: tuple[str, ...] = DEFAULT_FILLER_POOL

    @classmethod
    def generic(cls) -> "TemplateSet":
        return cls()

    @classmethod
    def from_json_obj(cls, data: Mapping) -> "TemplateSet":
        return cls(
            scenario_id=data.get("scenario_id"),
            global_clause=data.get("global", cls.global_clause),
            decision_clause=data.get("decision"),
            kinds=data.get("kinds"),
            filler_pool=tuple(data.get("filler_pool", DEFAULT_FILLER_POOL)),
        )


def load_templates(path: str | Path) -> TemplateSet:
    return TemplateSet.from_json_obj(json.loads(Path(path).read_text()))


def generic_class_of(catalog: ActionCatalog, action_name: str) -> str:
    """Class tag of a catalog action, for directive-generic wording."""
    action = catalog.by_name(action_name)
    if not action.class_tag:
        raise CatalogError(f"{action_name}: action has no class tag")
    return action.class_tag


def _plan_trajectory(mdp: RecourseMdp, policy: Policy, max_steps: int = 25) -> tuple[str, ...]:
    """Most-likely action sequence from the initial state, for display."""
    names: list[str] = []
    s = mdp.initial
    seen = {s}
    for _ in range(max_steps):
        a = policy.choice.get(s)
        if a is None:
            break
        names.append(mdp.catalog.actions[a].name)
        succ = mdp.transitions[(s, a)]
        s = max(succ, key=lambda tp: (tp[1], -tp[0]))[0]
        if s in seen:
            break
        seen.add(s)
    return tuple(names)


def assemble(
    model: LinearModel,
    x: Mapping[str, float],
    counterfactual: Counterfactual,
    desired: int,
    policy: Policy | None = None,
    mdp: RecourseMdp | None = None,
    provenance: Mapping | None = None,
) -> DirectiveExplanation:
    """Validate the pieces and populate the explanation tuple.

    The instance already holding the desired label is flagged as a boundary
    explanation (the counterfactual then describes the hypothetical opposite
    decision). A plan whose goal is unreachable is flagged rather than
    rejected.
    """
    schema = model.schema
    schema.validate_vector(x)
    schema.validate_vector(counterfactual.target)
    y = classify(model, x)
    y_prime = classify(model, counterfactual.target)
    if y_prime != counterfactual.achieved_label:
        raise SchemaError("counterfactual target no longer matches its stated label under this model")
    actual_changed = {n for n in schema.names if float(x[n]) != float(counterfactual.target[n])}
    if actual_changed != set(counterfactual.changed):
        raise SchemaError("counterfactual changed-set does not match its target")
    for name in counterfactual.changed:
        if not schema.by_name[name].mutable:
            raise SchemaError(f"counterfactual changes immutable feature {name!r}")
    if (mdp is None) != (policy is None):
        raise SchemaError("policy and mdp must be provided together")

    boundary = y == desired
    first_name = first_class = None
    plan_names: tuple[str, ...] = ()
    reach = cost = None
    unreachable = False
    if policy is not None and mdp is not None:
        if mdp.schema.names != schema.names:
            raise SchemaError("plan was built against a different schema than the model")
        if mdp.initial not in policy.choice:
            raise SchemaError("policy is undefined at the plan's initial state")
        reach = reachability(mdp, policy)
        cost = policy_cost(mdp, policy)
        unreachable = reach == 0.0
        a = policy.choice[mdp.initial]
        if a is not None:
            action = mdp.catalog.actions[a]
            first_name = action.name
            first_class = action.class_tag
            plan_names = _plan_trajectory(mdp, policy)
    return DirectiveExplanation(
        x=dict(x),
        counterfactual=counterfactual,
        policy=policy,
        model=model,
        y=y,
        y_prime=y_prime,
        boundary=boundary,
        unreachable=unreachable,
        first_action_name=first_name,
        first_action_class=first_class,
        plan_action_names=plan_names,
        goal_reachability=reach,
        expected_cost=cost,
        provenance=dict(provenance or {}),
    )


class _Slots(dict):
    def __missing__(self, key):
        raise TemplateError(f"template slot {{{key}}} cannot be filled")


def _format_value(value: float, unit: str) -> str:
    v = f"{value:g}"
    if unit == "$":
        return f"${v}"
    if unit == "%":
        return f"{v}%"
    return f"{v} {unit}" if unit else v


def _slot_values(de: DirectiveExplanation) -> _Slots:
    slots = _Slots()
    if de.first_action_name is not None:
        slots["action"] = de.first_action_name
    if de.first_action_class is not None:
        slots["class"] = de.first_action_class
    schema = de.model.schema
    changed = [n for n in schema.names if n in de.counterfactual.changed]
    if changed:
        name = changed[0]
        spec = schema.by_name[name]
        cur = float(de.x[name])
        tgt = float(de.counterfactual.target[name])
        slots["name"] = name.replace("_", " ")
        slots["unit"] = spec.unit
        slots["amount"] = _format_value(cur, spec.unit)
        slots["boundary"] = _format_value(tgt, spec.unit)
        slots["direction"] = "higher than" if tgt > cur else ("lower than" if tgt < cur else "at")
    return slots


_GENERIC_RECOURSE = {
    "non-directive": {
        "counterfactual": "For the decision to change, your {name} needs to be {direction} {boundary}.",
        "filler": "If your {name} had been {direction} {boundary} instead of {amount}, the decision would have gone the other way.",
    },
    "directive-specific": {
        "counterfactual": "For the decision to change, your {name} needs to be {direction} {boundary}.",
        "action": "You could {action}.",
    },
    "directive-generic": {
        "counterfactual": "For the decision to change, your {name} needs to be {direction} {boundary}.",
        "action": "You should {class}.",
    },
}

_GENERIC_BOUNDARY = {
    "non-directive": {
        "counterfactual": "The decision would have been different if your {name} had been {direction} {boundary}.",
        "filler": "Your {name} is {amount}, which kept the decision where it is.",
    },
    "directive-specific": {
        "counterfactual": "The decision would have been different if your {name} had been {direction} {boundary}.",
        "action": "You could {action}.",
    },
    "directive-generic": {
        "counterfactual": "The decision would have been different if your {name} had been {direction} {boundary}.",
        "action": "You should {class}.",
    },
}

_NO_CHANGE_TEXT = {
    "counterfactual": "No change is needed; the decision already matches the desired outcome.",
    "filler": "Your profile, exactly as submitted, supports this decision.",
}


def render(de: DirectiveExplanation, kind: str, templates: TemplateSet) -> ExplanationText:
    """Deterministic text for one explanation kind.

    The directive-specific action slot is filled with the plan's first action
    at the initial state; directive-generic uses that action's class tag.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown explanation kind {kind!r}; expected one of {KINDS}")
    slots = _slot_values(de)
    if templates.kinds is not None:
        clause_templates = templates.kinds.get(kind)
        if clause_templates is None:
            raise TemplateError(f"template set has no entry for kind {kind!r}")
    elif not de.counterfactual.changed:
        clause_templates = dict(_NO_CHANGE_TEXT)
        if kind != "non-directive":
            clause_templates = {"counterfactual": _NO_CHANGE_TEXT["counterfactual"], "action": "No action is required."}
    else:
        base = _GENERIC_BOUNDARY if de.boundary else _GENERIC_RECOURSE
        clause_templates = base[kind]

    def fill(template: str) -> str:
        return template.format_map(slots)

    counterfactual_clause = fill(clause_templates["counterfactual"])
    filler_clause = action_clause = None
    if kind == "non-directive":
        filler_clause = fill(clause_templates["filler"])
        body = f"{counterfactual_clause} {filler_clause}"
    else:
        action_clause = fill(clause_templates["action"])
        body = f"{counterfactual_clause} {action_clause}"

    decision_word = "approve" if de.y == 1 else "deny"
    decision_clause = templates.decision_clause or f"that decided to {decision_word} your application."
    return ExplanationText(
        kind=kind,
        decision_clause=decision_clause,
        global_clause=templates.global_clause,
        counterfactual_clause=counterfactual_clause,
        filler_clause=filler_clause,
        action_clause=action_clause,
        text=body,
        word_count=len(body.split()),
    )


def word_count(text: str) -> int:
    return len(text.split())


def balance_band(reference_counts: Sequence[int], tolerance: float = 0.25) -> tuple[int, int]:
    """Inclusive word-count band around the mean of the directive lengths."""
    if not reference_counts:
        raise ValueError("at least one reference length is required")
    mean = sum(reference_counts) / len(reference_counts)
    return math.ceil((1 - tolerance) * mean), math.floor((1 + tolerance) * mean)


def balance_filler(
    nd_text: ExplanationText,
    references: Sequence[ExplanationText | int],
    filler_pool: Sequence[str] = DEFAULT_FILLER_POOL,
    tolerance: float = 0.25,
) -> ExplanationText:
    """Grow or trim the filler so the non-directive length sits in the band.

    The band is +/-25 percent (by default) of the mean directive word count.
    Filler grows by appending pool sentences (cycled) and shrinks by dropping
    trailing words; already-balanced text returns unchanged.
    """
    if nd_text.kind != "non-directive":
        raise ValueError("balance_filler applies to non-directive texts")
    counts = [r.word_count if isinstance(r, ExplanationText) else int(r) for r in references]
    lo, hi = balance_band(counts, tolerance)
    if lo <= nd_text.word_count <= hi:
        return nd_text

    filler = nd_text.filler_clause or ""
    base_words = word_count(nd_text.counterfactual_clause)
    if nd_text.word_count < lo:
        pool = tuple(filler_pool) or DEFAULT_FILLER_POOL
        i = 0
        while base_words + word_count(filler) < lo:
            filler = f"{filler} {pool[i % len(pool)]}".strip()
            i += 1
    # Trim words (never below an empty filler) if we overshoot or started high.
    words = filler.split()
    while words and base_words + len(words) > hi:
        words.pop()
    filler = " ".join(words)
    if filler and not filler.endswith((".", "!", "?")):
        filler = filler.rstrip(",;:") + "."
    body = f"{nd_text.counterfactual_clause} {filler}".strip()
    return ExplanationText(
        kind=nd_text.kind,
        decision_clause=nd_text.decision_clause,
        global_clause=nd_text.global_clause,
        counterfactual_clause=nd_text.counterfactual_clause,
        filler_clause=filler or None,
        action_clause=None,
        text=body,
        word_count=word_count(body),
    )
