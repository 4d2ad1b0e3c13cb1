"""Render the three explanation kinds for a few lending scenarios.

The same assembled tuple (instance, counterfactual, plan) renders three ways:
counterfactual-only with filler for length balance, one concrete action, or a
general class of actions. Denied profiles explain how to reach approval;
already-approved profiles get the boundary form (what would have flipped the
decision the other way).
"""

from directive_recourse.explainer import TemplateSet
from directive_recourse.fixtures import scenario_bundle
from directive_recourse.pipeline import explain_profile

for sid in (3, 11, 7):
    bundle = scenario_bundle(sid)
    templates = TemplateSet.from_json_obj(bundle.templates)
    result = explain_profile(bundle.model, bundle.catalog, templates, bundle.profile, desired=1, kinds="all")
    de = result.explanation
    status = "approved" if de.y == 1 else "denied"
    mode = "boundary" if de.boundary else "recourse"
    print(f"=== Scenario {sid} ({bundle.customer}, {status}, {mode} mode) ===")
    print(f"counterfactual: change {sorted(de.counterfactual.changed)}; "
          f"plan: {' -> '.join(de.plan_action_names)}; "
          f"reachability {de.goal_reachability:.0%}, expected cost {de.expected_cost:.0f}")
    for text in result.texts:
        print(f"\n[{text.kind}] ({text.word_count} words)")
        print(f"  {text.text}")
    print()

print("=== Generic slot templates work for any schema ===")
bundle = scenario_bundle(3)
result = explain_profile(bundle.model, bundle.catalog, TemplateSet.generic(), bundle.profile, desired=1, kinds="all")
for text in result.texts:
    print(f"[{text.kind}] {text.text}")
