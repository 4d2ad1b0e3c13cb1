"""Nearest and diverse counterfactual states, and minimum-cost flipsets.

Counterfactual search minimizes an inverse-MAD-weighted Manhattan distance
over a discretized candidate space, with the desired label as a hard
constraint. The search is uniform-cost over partial assignments, which is
exhaustive-equivalent (exact) on the grid while only expanding states in
nondecreasing distance order. Flipset search minimizes total action cost over
per-feature delta menus.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import NoRecourseError, SchemaError, StateCapError
from .model import LinearModel, MadWeights, _classify_unchecked, classify
from .schema import FeatureSchema

_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


@dataclass(frozen=True)
class Counterfactual:
    """A target state the model classifies with the desired label."""

    target: Mapping[str, float]
    distance: float
    changed: frozenset[str]
    achieved_label: int

    def to_dict(self) -> dict:
        return {
            "target": dict(self.target),
            "distance": self.distance,
            "changed": sorted(self.changed),
            "achieved_label": self.achieved_label,
        }


@dataclass(frozen=True)
class FlipSet:
    """Signed per-feature changes whose application flips the label."""

    deltas: Mapping[str, float]
    total_cost: float

    def to_dict(self) -> dict:
        return {
            "deltas": dict(self.deltas),
            "total_cost": self.total_cost,
            "changed": sorted(self.deltas),
        }


@dataclass(frozen=True)
class SearchGrid:
    """Per-feature candidate values for counterfactual search."""

    steps: Mapping[str, float]
    values: Mapping[str, tuple[float, ...]]

    def __post_init__(self):
        for name, s in self.steps.items():
            if s <= 0:
                raise ValueError(f"grid step for {name} must be > 0")

    @classmethod
    def from_schema(
        cls,
        schema: FeatureSchema,
        steps: Mapping[str, float] | None = None,
        features: Sequence[str] | None = None,
    ) -> "SearchGrid":
        """Build grids from schema-declared steps.

        ``features`` restricts the grid to a subset (defaults to every mutable
        feature); ``steps`` overrides the schema's per-feature step.
        """
        steps = dict(steps or {})
        if features is None:
            features = [f.name for f in schema.features if f.mutable]
        out_steps: dict[str, float] = {}
        out_values: dict[str, tuple[float, ...]] = {}
        for name in features:
            spec = schema.by_name.get(name)
            if spec is None:
                raise SchemaError(f"unknown feature {name!r} in grid")
            if not spec.mutable:
                raise SchemaError(f"{name}: cannot build a search grid over an immutable feature")
            step = steps.get(name, spec.default_step())
            out_steps[name] = step
            vals = spec.grid_values(step)
            lo, hi = spec.bounds
            if any(v < lo or v > hi for v in vals):
                raise ValueError(f"{name}: grid values escape bounds")
            out_values[name] = tuple(vals)
        return cls(steps=out_steps, values=out_values)


def weighted_distance(
    schema: FeatureSchema,
    x: Mapping[str, float],
    c: Mapping[str, float],
    weights: MadWeights,
) -> float:
    """Sum of weight * |x_i - c_i| over non-excluded features."""
    schema.validate_vector(x)
    schema.validate_vector(c)
    total = 0.0
    for name in schema.names:
        if name in weights.excluded:
            continue
        total += weights.weight(name) * abs(float(x[name]) - float(c[name]))
    return total


def _candidate_lists(
    schema: FeatureSchema,
    x: Mapping[str, float],
    grid: SearchGrid,
    weights: MadWeights,
) -> list[tuple[str, float, tuple[float, ...]]]:
    """(name, x_value, movable candidate values) per feature, schema order.

    Immutable features, features outside the grid, and MAD-excluded features
    have no movable candidates and stay at their current value.
    """
    out = []
    for spec in schema.features:
        xv = float(x[spec.name])
        movable: tuple[float, ...] = ()
        if spec.mutable and spec.name not in weights.excluded:
            vals = grid.values.get(spec.name)
            if vals:
                movable = tuple(sorted(v for v in set(vals) if v != xv))
        out.append((spec.name, xv, movable))
    return out


def nearest_counterfactual(
    model: LinearModel,
    x: Mapping[str, float],
    desired: int,
    grid: SearchGrid,
    weights: MadWeights,
    forbidden_changed_sets: Iterable[frozenset[str]] = (),
    max_expansions: int = 2_000_000,
) -> Counterfactual | None:
    """Grid point with the desired label minimizing weighted distance to x.

    Exact on the candidate space: every immutable coordinate equals x's, and
    among feasible points the result minimizes the weighted distance. Ties
    break by fewest changed features, then by earliest changed features in the
    schema's declared order, then by smallest values. Returns None when no
    candidate flips the label.
    """
    schema = model.schema
    schema.validate_vector(x)
    if not schema.has_recourse:
        raise NoRecourseError("all features are immutable; no recourse is possible")
    forbidden = {frozenset(s) for s in forbidden_changed_sets}

    if classify(model, x) == desired and frozenset() not in forbidden:
        return Counterfactual(target=dict(x), distance=0.0, changed=frozenset(), achieved_label=desired)

    cands = _candidate_lists(schema, x, grid, weights)
    if all(not movable for _, _, movable in cands):
        raise ValueError("empty grid: no feature has candidate values to search")

    names = [name for name, _, _ in cands]
    base = {name: xv for name, xv, _ in cands}

    def flips(assign: tuple[tuple[int, float], ...]) -> bool:
        probe = dict(base)
        for idx, v in assign:
            probe[names[idx]] = v
        return _classify_unchecked(model, probe) == desired

    # Frontier entries: (distance, n_changed, changed-index tuple, value
    # tuple, assignment, last feature index). Each assignment extends only
    # features after its last changed index, so every subset/value combination
    # is generated exactly once and no visited set is needed; popping in key
    # order realizes the tie-breaking contract.
    start = (0.0, 0, (), (), (), -1)
    heap: list[tuple] = [start]
    expansions = 0
    while heap:
        dist, n_changed, ch_idx, ch_vals, assign, last = heapq.heappop(heap)
        if assign and frozenset(names[i] for i in ch_idx) not in forbidden and flips(assign):
            target = dict(base)
            for idx, v in assign:
                target[names[idx]] = v
            if classify(model, target) == desired:
                return Counterfactual(
                    target=target,
                    distance=dist,
                    changed=frozenset(names[i] for i in ch_idx),
                    achieved_label=desired,
                )
        expansions += 1
        if expansions > max_expansions:
            raise StateCapError(cap=max_expansions, reached=expansions)
        for idx in range(last + 1, len(cands)):
            name, xv, movable = cands[idx]
            w = weights.weight(name)
            for v in movable:
                heapq.heappush(
                    heap,
                    (
                        dist + w * abs(xv - v),
                        n_changed + 1,
                        ch_idx + (idx,),
                        ch_vals + (v,),
                        assign + ((idx, v),),
                        idx,
                    ),
                )
    return None


def diverse_counterfactuals(
    model: LinearModel,
    x: Mapping[str, float],
    desired: int,
    grid: SearchGrid,
    weights: MadWeights,
    k: int,
) -> list[Counterfactual]:
    """Up to k counterfactuals with pairwise distinct changed-feature sets.

    Iterates nearest_counterfactual, forbidding each round's changed set in
    later rounds; stops early when the grid is exhausted. Sorted by distance.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    results: list[Counterfactual] = []
    forbidden: set[frozenset[str]] = set()
    for _ in range(k):
        cf = nearest_counterfactual(model, x, desired, grid, weights, forbidden_changed_sets=forbidden)
        if cf is None:
            break
        results.append(cf)
        forbidden.add(cf.changed)
    results.sort(key=lambda c: (c.distance, len(c.changed), tuple(sorted(c.changed))))
    return results


@dataclass(frozen=True)
class DeltaMenu:
    """Allowed signed changes for one feature, with a unit cost per unit moved."""

    feature: str
    deltas: tuple[float, ...]
    unit_cost: float = 1.0
    condition: tuple[str, str, float] | None = None  # (feature, op, value)

    def enabled_for(self, x: Mapping[str, float]) -> bool:
        if self.condition is None:
            return True
        feat, op, value = self.condition
        return _OPS[op](float(x[feat]), value)


@dataclass(frozen=True)
class ActionGrid:
    """Per-feature delta menus defining the actionable set around an instance."""

    menus: tuple[DeltaMenu, ...]

    def validate(self, schema: FeatureSchema) -> None:
        for menu in self.menus:
            spec = schema.by_name.get(menu.feature)
            if spec is None:
                raise SchemaError(f"action grid names unknown feature {menu.feature!r}")
            if not spec.mutable:
                raise SchemaError(f"{menu.feature}: immutable features cannot appear in an action grid")
            if menu.unit_cost < 0:
                raise ValueError(f"{menu.feature}: unit_cost must be >= 0")
            for d in menu.deltas:
                if d == 0:
                    raise ValueError(f"{menu.feature}: zero delta is not an action")
                if spec.direction == "increase-only" and d < 0:
                    raise SchemaError(f"{menu.feature}: negative delta on an increase-only feature")
                if spec.direction == "decrease-only" and d > 0:
                    raise SchemaError(f"{menu.feature}: positive delta on a decrease-only feature")

    @classmethod
    def from_json_obj(cls, data) -> "ActionGrid":
        entries = data["entries"] if isinstance(data, Mapping) else data
        menus = []
        for e in entries:
            cond = e.get("condition")
            menus.append(
                DeltaMenu(
                    feature=e["feature"],
                    deltas=tuple(float(d) for d in e["deltas"]),
                    unit_cost=float(e.get("unit_cost", 1.0)),
                    condition=(cond["feature"], cond["op"], float(cond["value"])) if cond else None,
                )
            )
        return cls(menus=tuple(menus))


def min_cost_flipset(
    model: LinearModel,
    x: Mapping[str, float],
    desired: int,
    action_grid: ActionGrid,
    budget: float | None = None,
) -> FlipSet | None:
    """Minimum-total-cost delta combination whose application flips the label.

    Exhaustive over the per-feature menus (at most one delta per feature),
    pruning by budget and by the best cost found. Ties break by fewest touched
    features, then by earliest touched features in schema order, then by
    smallest deltas. Deltas whose result leaves bounds, or whose menu's
    enabling condition fails at x, are not applicable. Returns None when
    nothing within budget flips.
    """
    schema = model.schema
    schema.validate_vector(x)
    if not schema.has_recourse:
        raise NoRecourseError("all features are immutable; no recourse is possible")
    if not action_grid.menus:
        raise ValueError("empty action grid")
    action_grid.validate(schema)

    if classify(model, x) == desired:
        return FlipSet(deltas={}, total_cost=0.0)

    # Applicable options per feature, in schema order; menus for the same
    # feature merge.
    per_feature: dict[str, list[tuple[float, float]]] = {}
    for menu in action_grid.menus:
        if not menu.enabled_for(x):
            continue
        spec = schema.by_name[menu.feature]
        xv = float(x[menu.feature])
        opts = per_feature.setdefault(menu.feature, [])
        for d in menu.deltas:
            if spec.contains(xv + d):
                opts.append((d, menu.unit_cost * abs(d)))
    order = {name: i for i, name in enumerate(schema.names)}
    features = sorted(per_feature, key=order.__getitem__)
    if not features:
        return None

    best: tuple | None = None  # (cost, n, index tuple, deltas tuple, combo dict)

    def combo_key(cost: float, combo: dict[str, float]) -> tuple:
        touched = sorted(combo, key=order.__getitem__)
        return (cost, len(combo), tuple(order[n] for n in touched), tuple(combo[n] for n in touched))

    def search(i: int, cost: float, combo: dict[str, float]) -> None:
        nonlocal best
        if budget is not None and cost > budget + 1e-12:
            return
        if best is not None and cost > best[0] + 1e-12:
            return
        if i == len(features):
            if not combo:
                return
            probe = dict(x)
            for name, d in combo.items():
                probe[name] = float(x[name]) + d
            if _classify_unchecked(model, probe) != desired:
                return
            key = combo_key(cost, combo)
            if best is None or key < best[:4]:
                best = key + (dict(combo),)
            return
        name = features[i]
        search(i + 1, cost, combo)
        for d, c in sorted(per_feature[name]):
            combo[name] = d
            search(i + 1, cost + c, combo)
            del combo[name]

    search(0, 0.0, {})
    if best is None:
        return None
    deltas = best[4]
    probe = dict(x)
    for name, d in deltas.items():
        probe[name] = float(x[name]) + d
    assert classify(model, probe) == desired
    return FlipSet(deltas=deltas, total_cost=best[0])
