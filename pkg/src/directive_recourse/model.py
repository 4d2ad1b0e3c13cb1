"""Linear (logistic) classifier, training, MAD statistics, and PDP probing.

The classifier is a logistic regression over the schema's features. Continuous
and ordinal features contribute ``weight * value``; categorical features
contribute a per-category coefficient (one-hot internally, keyed by feature
name externally). The decision rule classifies 1 when the predicted
probability is greater than or equal to the threshold, so an exact tie at the
threshold classifies as 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import SchemaError
from .schema import FeatureSchema

# Smallest/largest probabilities ever reported, keeping predict_proba inside
# the open interval (0, 1) even where the sigmoid saturates in float64.
_P_LO = 5e-324
_P_HI = float(np.nextafter(1.0, 0.0))


def sigmoid(z: float) -> float:
    if z >= 0:
        p = 1.0 / (1.0 + math.exp(-min(z, 745.0)))
    else:
        e = math.exp(max(z, -745.0))
        p = e / (1.0 + e)
    return min(max(p, _P_LO), _P_HI)


@dataclass(frozen=True)
class LinearModel:
    """Logistic classifier: weights, bias, and a decision threshold in (0,1).

    ``weights`` maps each schema feature name to a real coefficient, or, for a
    categorical feature, to a mapping of category value to coefficient.
    """

    schema: FeatureSchema
    weights: Mapping[str, float | Mapping[float, float]]
    bias: float = 0.0
    threshold: float = 0.5
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if set(self.weights) != set(self.schema.names):
            raise SchemaError("weights must be keyed exactly by schema feature names")
        if not (0.0 < self.threshold < 1.0):
            raise SchemaError(f"threshold must be in (0,1), got {self.threshold}")
        for spec in self.schema.features:
            w = self.weights[spec.name]
            if spec.kind == "categorical":
                if not isinstance(w, Mapping):
                    raise SchemaError(f"{spec.name}: categorical weight must map value -> coefficient")
            elif not isinstance(w, (int, float)) or not math.isfinite(w):
                raise SchemaError(f"{spec.name}: weight must be a finite real")

    def score(self, x: Mapping[str, float]) -> float:
        """Raw logit w.x + b. Does not validate ``x`` against the schema."""
        z = self.bias
        for spec in self.schema.features:
            w = self.weights[spec.name]
            v = x[spec.name]
            if spec.kind == "categorical":
                z += w.get(v, 0.0)
            else:
                z += w * v
        return z


def predict_proba(model: LinearModel, x: Mapping[str, float]) -> float:
    """Probability of label 1, strictly inside (0, 1)."""
    model.schema.validate_vector(x)
    return sigmoid(model.score(x))


def classify(model: LinearModel, x: Mapping[str, float]) -> int:
    """1 iff predict_proba >= threshold; an exact tie classifies as 1."""
    return 1 if predict_proba(model, x) >= model.threshold else 0


def _classify_unchecked(model: LinearModel, x: Mapping[str, float]) -> int:
    # Internal fast path for probe/search code that constructs off-grid points.
    return 1 if sigmoid(model.score(x)) >= model.threshold else 0


@dataclass(frozen=True)
class MadWeights:
    """Inverse median-absolute-deviation weight per feature.

    Features whose MAD over the reference data is zero carry no usable scale
    and are excluded from the distance and from perturbation.
    """

    weights: Mapping[str, float]
    excluded: frozenset[str]

    def weight(self, name: str) -> float:
        return self.weights.get(name, 0.0)

    @classmethod
    def uniform(cls, schema: FeatureSchema) -> "MadWeights":
        """Weight 1 for every numeric feature; categorical features excluded."""
        w, excl = {}, set()
        for spec in schema.features:
            if spec.kind == "categorical":
                excl.add(spec.name)
            else:
                w[spec.name] = 1.0
        return cls(weights=w, excluded=frozenset(excl))


def mad_weights(schema: FeatureSchema, rows: Sequence[Mapping[str, float]]) -> MadWeights:
    """Per-feature 1/MAD over a reference dataset.

    MAD is the median of absolute deviations from the feature's median.
    Categorical features have no numeric deviation and are always excluded.
    """
    if not rows:
        raise ValueError("mad_weights: empty dataset")
    weights: dict[str, float] = {}
    excluded: set[str] = set()
    for spec in schema.features:
        if spec.kind == "categorical":
            excluded.add(spec.name)
            continue
        col = np.asarray([float(r[spec.name]) for r in rows], dtype=float)
        mad = float(np.median(np.abs(col - np.median(col))))
        if mad == 0.0:
            excluded.add(spec.name)
        else:
            weights[spec.name] = 1.0 / mad
    return MadWeights(weights=weights, excluded=frozenset(excluded))


def _design_matrix(schema: FeatureSchema, rows: Sequence[Mapping[str, float]]):
    """Expand rows to a dense matrix; categorical features one-hot per value."""
    cols: list[tuple[str, float | None]] = []
    for spec in schema.features:
        if spec.kind == "categorical":
            cols.extend((spec.name, v) for v in spec.values)
        else:
            cols.append((spec.name, None))
    X = np.zeros((len(rows), len(cols)), dtype=float)
    for i, row in enumerate(rows):
        for j, (name, cat) in enumerate(cols):
            v = float(row[name])
            X[i, j] = (1.0 if v == cat else 0.0) if cat is not None else v
    return X, cols


def train_logistic(
    schema: FeatureSchema,
    rows: Sequence[Mapping[str, float]],
    labels: Sequence[int],
    learning_rate: float = 0.5,
    epochs: int = 500,
    l2: float = 1e-4,
    seed: int = 0,
    threshold: float = 0.5,
) -> LinearModel:
    """Fit a logistic regression by full-batch gradient descent.

    Features are standardized internally for conditioning and the fitted
    coefficients are mapped back to original units, so the returned model
    scores raw feature values. Weights start at zero, so the fit is
    deterministic for a fixed row order regardless of the seed; the seed is
    accepted for interface stability.
    """
    del seed
    if not rows:
        raise ValueError("train_logistic: empty dataset")
    if len(rows) != len(labels):
        raise ValueError("train_logistic: rows and labels length mismatch")
    y = np.asarray(labels, dtype=float)
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("train_logistic: labels must be in {0, 1}")
    for row in rows:
        schema.validate_vector(row)

    X, cols = _design_matrix(schema, rows)
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    sd[sd == 0.0] = 1.0
    Xs = (X - mu) / sd

    n = len(rows)
    w = np.zeros(Xs.shape[1])
    b = 0.0
    for _ in range(epochs):
        z = Xs @ w + b
        p = 1.0 / (1.0 + np.exp(-np.clip(z, -700, 700)))
        g = p - y
        grad_w = Xs.T @ g / n + l2 * w
        grad_b = float(g.mean())
        w -= learning_rate * grad_w
        b -= learning_rate * grad_b

    # Undo the standardization: w_s.(x-mu)/sd + b = (w_s/sd).x + (b - w_s.mu/sd)
    w_raw = w / sd
    b_raw = b - float(np.dot(w, mu / sd))

    weights: dict[str, float | dict[float, float]] = {}
    for spec in schema.features:
        if spec.kind == "categorical":
            weights[spec.name] = {
                cat: float(w_raw[j]) for j, (name, cat) in enumerate(cols) if name == spec.name
            }
        else:
            j = next(j for j, (name, cat) in enumerate(cols) if name == spec.name and cat is None)
            weights[spec.name] = float(w_raw[j])
    return LinearModel(schema=schema, weights=weights, bias=b_raw, threshold=threshold)


def training_accuracy(model: LinearModel, rows: Sequence[Mapping[str, float]], labels: Sequence[int]) -> float:
    hits = sum(1 for row, y in zip(rows, labels) if classify(model, row) == int(y))
    return hits / len(rows)


def pdp_threshold(
    model: LinearModel,
    x: Mapping[str, float],
    feature: str,
    tol: float = 1e-6,
) -> float | None:
    """Value of one feature at which the decision flips, others held fixed.

    The logistic score is monotone in a single coordinate, so there is at most
    one crossing inside the feature's bounds. Returns the crossing located by
    bisection to within ``tol`` times the feature's range, or None when the
    decision never changes inside bounds. Categorical features have no order
    to probe; use a what-if query instead.
    """
    model.schema.validate_vector(x)
    spec = model.schema.by_name.get(feature)
    if spec is None:
        raise SchemaError(f"unknown feature {feature!r}")
    if spec.kind == "categorical":
        raise ValueError(f"{feature}: categorical features have no ordered boundary; use what_if")
    lo, hi = spec.bounds
    if hi <= lo:
        return None

    probe = dict(x)

    def label_at(v: float) -> int:
        probe[feature] = v
        return _classify_unchecked(model, probe)

    y_lo, y_hi = label_at(lo), label_at(hi)
    if y_lo == y_hi:
        return None
    a, b = lo, hi
    eps = tol * (hi - lo)
    while b - a > eps:
        mid = 0.5 * (a + b)
        if label_at(mid) == y_lo:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def pdp_curve(
    model: LinearModel,
    x: Mapping[str, float],
    feature: str,
    grid_size: int = 101,
) -> list[tuple[float, float]]:
    """(value, probability) pairs on an even grid over the feature's bounds."""
    if grid_size < 2:
        raise ValueError("pdp_curve: grid_size must be >= 2")
    model.schema.validate_vector(x)
    spec = model.schema.by_name.get(feature)
    if spec is None:
        raise SchemaError(f"unknown feature {feature!r}")
    if spec.kind == "categorical":
        raise ValueError(f"{feature}: categorical features have no ordered grid; use what_if")
    lo, hi = spec.bounds
    probe = dict(x)
    out = []
    for i in range(grid_size):
        v = lo + (hi - lo) * i / (grid_size - 1)
        probe[feature] = v
        out.append((v, sigmoid(model.score(probe))))
    return out
