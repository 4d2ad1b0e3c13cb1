"""Nearest target states and cheapest actionable changes for a denied profile.

Shows the two recourse primitives side by side: the closest state the model
would approve (weighted Manhattan distance, label as a hard constraint), and
the minimum-cost combination of allowed deltas that flips the decision.
"""

from directive_recourse import (
    ActionGrid,
    DeltaMenu,
    MadWeights,
    SearchGrid,
    classify,
    diverse_counterfactuals,
    min_cost_flipset,
    nearest_counterfactual,
    weighted_distance,
)
from directive_recourse.fixtures import lending_demo

demo = lending_demo()
model, profile, schema = demo.model, dict(demo.profile), demo.schema
weights = MadWeights.uniform(schema)

print(f"profile: income ${profile['income']:,.0f} -> label {classify(model, profile)} (denied)")

print("\n=== Nearest approved state on the income grid ===")
grid = SearchGrid.from_schema(schema, steps={"income": 1000}, features=["income"])
cf = nearest_counterfactual(model, profile, desired=1, grid=grid, weights=weights)
print(f"target income: ${cf.target['income']:,.0f}  changed={sorted(cf.changed)}  distance={cf.distance:,.0f}")
print(f"distance recomputed: {weighted_distance(schema, profile, cf.target, weights):,.0f}")

print("\n=== Multiple routes: let the search touch more features ===")
wide = SearchGrid.from_schema(
    schema, steps={"income": 1000, "loan_amount": 500}, features=["income", "loan_amount"]
)
for i, option in enumerate(diverse_counterfactuals(model, profile, 1, wide, weights, k=3), start=1):
    deltas = {n: option.target[n] - profile[n] for n in sorted(option.changed)}
    print(f"  option {i}: change {deltas} (distance {option.distance:,.0f})")
print("(only income carries weight in this model, so one route exists)")

print("\n=== Cheapest actionable change under a delta menu ===")
menu = ActionGrid(
    menus=(
        DeltaMenu("income", deltas=(5000.0, 13000.0, 20000.0), unit_cost=0.001),
        DeltaMenu("loan_amount", deltas=(-4000.0, -2000.0), unit_cost=0.002),
    )
)
flip = min_cost_flipset(model, profile, desired=1, action_grid=menu)
if flip is None:
    print("no combination within the menu flips the decision")
else:
    print(f"apply {dict(flip.deltas)} at total cost {flip.total_cost:.2f}")

print("\n=== A budget can make recourse infeasible ===")
print("budget 5 :", min_cost_flipset(model, profile, 1, menu, budget=5.0))
print("budget 50:", min_cost_flipset(model, profile, 1, menu, budget=50.0).to_dict())
