"""Train a scoring model, then probe where its decisions flip.

Walks through the model layer: fitting a logistic classifier on synthetic
applications, inverse-MAD feature scales, and per-feature decision boundaries
(the values at which the decision would change with everything else fixed).
"""

import numpy as np

from directive_recourse import (
    FeatureSchema,
    FeatureSpec,
    classify,
    mad_weights,
    pdp_curve,
    pdp_threshold,
    predict_proba,
    train_logistic,
    training_accuracy,
)
from directive_recourse.fixtures import lending_demo

rng = np.random.default_rng(7)

print("=== Fitting a toy approval model ===")
schema = FeatureSchema(
    (
        FeatureSpec("income", "continuous", (0, 120_000), "$", "actionable", "increase-only", step=1000),
        FeatureSpec("debt", "continuous", (0, 60_000), "$", "actionable", "free", step=1000),
    )
)
rows, labels = [], []
for _ in range(400):
    income = float(rng.uniform(10_000, 120_000))
    debt = float(rng.uniform(0, 60_000))
    rows.append({"income": income, "debt": debt})
    labels.append(1 if income - 1.5 * debt > 20_000 else 0)

model = train_logistic(schema, rows, labels, epochs=900)
print(f"training accuracy: {training_accuracy(model, rows, labels):.3f}")

applicant = {"income": 38_000.0, "debt": 18_000.0}
print(f"applicant {applicant}: label={classify(model, applicant)}, "
      f"p(approve)={predict_proba(model, applicant):.3f}")

print("\n=== Feature scales from a reference population ===")
weights = mad_weights(schema, rows)
for name in schema.names:
    tag = "excluded (no spread)" if name in weights.excluded else f"1/MAD = {weights.weight(name):.6f}"
    print(f"  {name:8s} {tag}")

print("\n=== Where does the decision flip? ===")
for name in schema.names:
    boundary = pdp_threshold(model, applicant, name)
    if boundary is None:
        print(f"  {name:8s} no flip inside bounds")
    else:
        print(f"  {name:8s} decision changes at {boundary:,.0f} (others held fixed)")

print("\n=== The shipped lending demo is calibrated the same way ===")
demo = lending_demo()
print(f"demo profile income: ${demo.profile['income']:,.0f} -> label {classify(demo.model, demo.profile)}")
print(f"income boundary: ${pdp_threshold(demo.model, demo.profile, 'income'):,.1f}")
curve = pdp_curve(demo.model, demo.profile, "income", grid_size=9)
print("income PDP:", ", ".join(f"{v/1000:.0f}k:{p:.2f}" for v, p in curve))
