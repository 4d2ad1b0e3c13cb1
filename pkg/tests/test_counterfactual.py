import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from directive_recourse.counterfactual import (
    ActionGrid,
    DeltaMenu,
    SearchGrid,
    diverse_counterfactuals,
    min_cost_flipset,
    nearest_counterfactual,
    weighted_distance,
)
from directive_recourse.errors import NoRecourseError, SchemaError
from directive_recourse.fixtures import lending_demo
from directive_recourse.model import LinearModel, MadWeights, classify
from directive_recourse.schema import FeatureSchema, FeatureSpec


def pair_schema():
    return FeatureSchema(
        (
            FeatureSpec("a", "continuous", (-10, 10), step=1),
            FeatureSpec("b", "continuous", (-10, 10), step=1),
        )
    )


# --- weighted distance ----------------------------------------------------


def test_distance_identity():
    schema = pair_schema()
    w = MadWeights(weights={"a": 1.0, "b": 0.5}, excluded=frozenset())
    assert weighted_distance(schema, {"a": 1, "b": 2}, {"a": 1, "b": 2}, w) == 0.0


def test_distance_direct_arithmetic():
    schema = pair_schema()
    w = MadWeights(weights={"a": 1.0, "b": 0.5}, excluded=frozenset())
    assert weighted_distance(schema, {"a": 1, "b": 2}, {"a": 3, "b": 2}, w) == pytest.approx(2.0)


def test_distance_schema_mismatch():
    schema = pair_schema()
    w = MadWeights(weights={"a": 1.0, "b": 0.5}, excluded=frozenset())
    with pytest.raises(SchemaError):
        weighted_distance(schema, {"a": 1}, {"a": 1, "b": 2}, w)


@given(
    xs=st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
    cs=st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
    ws=st.tuples(st.floats(0.01, 5), st.floats(0.01, 5)),
)
@settings(max_examples=100, deadline=None)
def test_distance_matches_straight_line_oracle(xs, cs, ws):
    schema = pair_schema()
    x = {"a": xs[0], "b": xs[1]}
    c = {"a": cs[0], "b": cs[1]}
    w = MadWeights(weights={"a": ws[0], "b": ws[1]}, excluded=frozenset())
    expected = oracles.straight_line_distance(schema.names, x, c, dict(w.weights), set())
    assert weighted_distance(schema, x, c, w) == pytest.approx(expected, abs=1e-12)


# --- nearest counterfactual -------------------------------------------------


def test_trivial_when_already_desired():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 0.0}, bias=0.0)
    grid = SearchGrid.from_schema(schema)
    w = MadWeights.uniform(schema)
    cf = nearest_counterfactual(model, {"a": 5.0, "b": 0.0}, 1, grid, w)
    assert cf.distance == 0.0
    assert cf.changed == frozenset()
    assert cf.target == {"a": 5.0, "b": 0.0}


def test_lending_income_grid_first_point_past_boundary():
    bundle = lending_demo()
    grid = SearchGrid.from_schema(bundle.schema, steps={"income": 1000}, features=["income"])
    cf = nearest_counterfactual(bundle.model, bundle.profile, 1, grid, MadWeights.uniform(bundle.schema))
    assert cf.target["income"] == 43000
    assert cf.changed == frozenset({"income"})


def small_random_setup(seed, n_mutable=3, n_points=5):
    rng = np.random.default_rng(seed)
    feats = [FeatureSpec("frozen", "continuous", (-5, 5), mutability="immutable")]
    for i in range(n_mutable):
        feats.append(FeatureSpec(f"f{i}", "continuous", (-5, 5), step=10 / (n_points - 1)))
    schema = FeatureSchema(tuple(feats))
    weights = {f.name: float(rng.normal(0, 1)) for f in feats}
    model = LinearModel(schema, weights, bias=float(rng.normal(0, 0.5)))
    x = {f.name: float(rng.uniform(-5, 5)) for f in feats}
    mad = MadWeights(
        weights={f.name: float(rng.uniform(0.2, 2.0)) for f in feats},
        excluded=frozenset(),
    )
    return schema, model, x, mad


@pytest.mark.parametrize("seed", range(12))
def test_nearest_matches_exhaustive_enumeration(seed):
    schema, model, x, mad = small_random_setup(seed)
    grid = SearchGrid.from_schema(schema)
    desired = 1 - classify(model, x)
    cf = nearest_counterfactual(model, x, desired, grid, mad)
    pools = {}
    for spec in schema.features:
        if spec.mutable:
            pools[spec.name] = sorted(set(grid.values[spec.name]) | {x[spec.name]})
        else:
            pools[spec.name] = [x[spec.name]]
    expected = oracles.brute_force_nearest(model, x, desired, pools, dict(mad.weights), set(), schema.names)
    if expected is None:
        assert cf is None
    else:
        assert cf is not None
        assert cf.distance == pytest.approx(expected[0], abs=1e-9)


def test_grid_refinement_never_increases_distance():
    schema, model, x, mad = small_random_setup(99)
    desired = 1 - classify(model, x)
    coarse = SearchGrid.from_schema(schema, steps={"f0": 5, "f1": 5, "f2": 5})
    fine = SearchGrid.from_schema(schema, steps={"f0": 2.5, "f1": 2.5, "f2": 2.5})
    cf_coarse = nearest_counterfactual(model, x, desired, coarse, mad)
    cf_fine = nearest_counterfactual(model, x, desired, fine, mad)
    if cf_coarse is not None:
        assert cf_fine is not None
        assert cf_fine.distance <= cf_coarse.distance + 1e-12


def test_all_immutable_raises():
    schema = FeatureSchema(
        (
            FeatureSpec("a", "continuous", (-10, 10), mutability="immutable"),
            FeatureSpec("b", "continuous", (-10, 10), mutability="immutable"),
        )
    )
    model = LinearModel(schema, {"a": 1.0, "b": 0.0}, bias=0.0)
    grid = SearchGrid(steps={}, values={})
    with pytest.raises(NoRecourseError):
        nearest_counterfactual(model, {"a": -5.0, "b": 0.0}, 1, grid, MadWeights.uniform(schema))


def test_empty_grid_raises():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 0.0}, bias=0.0)
    grid = SearchGrid(steps={}, values={})
    with pytest.raises(ValueError):
        nearest_counterfactual(model, {"a": -5.0, "b": 0.0}, 1, grid, MadWeights.uniform(schema))


def test_mad_excluded_features_never_perturbed():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 5.0}, bias=0.0)
    grid = SearchGrid.from_schema(schema)
    w = MadWeights(weights={"a": 1.0}, excluded=frozenset({"b"}))
    cf = nearest_counterfactual(model, {"a": -5.0, "b": 0.0}, 1, grid, w)
    assert cf is not None
    assert cf.target["b"] == 0.0


# --- diverse counterfactuals ------------------------------------------------


def either_feature_flips():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 1.0}, bias=0.0)
    x = {"a": -1.0, "b": -1.0}
    return schema, model, x


def test_diverse_k1_equals_nearest():
    schema, model, x = either_feature_flips()
    grid = SearchGrid.from_schema(schema)
    w = MadWeights.uniform(schema)
    single = diverse_counterfactuals(model, x, 1, grid, w, k=1)
    assert len(single) == 1
    assert single[0] == nearest_counterfactual(model, x, 1, grid, w)


def test_diverse_disjoint_changed_sets():
    schema, model, x = either_feature_flips()
    grid = SearchGrid.from_schema(schema)
    results = diverse_counterfactuals(model, x, 1, grid, MadWeights.uniform(schema), k=2)
    assert len(results) == 2
    assert results[0].changed != results[1].changed
    assert results[0].changed.isdisjoint(results[1].changed)
    assert results[0].distance <= results[1].distance


def test_diverse_exhausts_when_one_feature_mutable():
    schema = FeatureSchema(
        (
            FeatureSpec("a", "continuous", (-10, 10), step=1),
            FeatureSpec("b", "continuous", (-10, 10), mutability="immutable"),
        )
    )
    model = LinearModel(schema, {"a": 1.0, "b": 0.0}, bias=0.0)
    results = diverse_counterfactuals(
        model, {"a": -5.0, "b": 0.0}, 1, SearchGrid.from_schema(schema), MadWeights.uniform(schema), k=3
    )
    assert len(results) == 1


def test_diverse_pairwise_distinct_changed_sets_random():
    schema, model, x, mad = small_random_setup(4)
    grid = SearchGrid.from_schema(schema)
    results = diverse_counterfactuals(model, x, 1 - classify(model, x), grid, mad, k=4)
    sets = [r.changed for r in results]
    assert len(sets) == len(set(sets))


# --- minimum-cost flipsets ----------------------------------------------------


def test_flipset_noop_when_already_desired():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 0.0}, bias=0.0)
    grid = ActionGrid(menus=(DeltaMenu("a", deltas=(1.0,)),))
    fs = min_cost_flipset(model, {"a": 5.0, "b": 0.0}, 1, grid)
    assert fs.deltas == {}
    assert fs.total_cost == 0.0


def test_flipset_picks_cheaper_of_two_flipping_deltas():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 1.0}, bias=0.0)
    x = {"a": -1.0, "b": -1.0}
    grid = ActionGrid(
        menus=(
            DeltaMenu("a", deltas=(3.0,), unit_cost=1.0),  # cost 3
            DeltaMenu("b", deltas=(3.0,), unit_cost=1 / 3),  # cost 1
        )
    )
    fs = min_cost_flipset(model, x, 1, grid)
    assert set(fs.deltas) == {"b"}
    assert fs.total_cost == pytest.approx(1.0)


@pytest.mark.parametrize("seed", range(8))
def test_flipset_matches_brute_force(seed):
    rng = np.random.default_rng(seed + 500)
    schema = FeatureSchema(
        tuple(FeatureSpec(f"f{i}", "continuous", (-20, 20)) for i in range(3))
    )
    model = LinearModel(
        schema, {f"f{i}": float(rng.normal(0, 1)) for i in range(3)}, bias=float(rng.normal(0, 0.5))
    )
    x = {f"f{i}": float(rng.uniform(-5, 5)) for i in range(3)}
    desired = 1 - classify(model, x)
    menus, options = [], {}
    for i in range(3):
        deltas = tuple(float(d) for d in rng.choice([-4, -2, -1, 1, 2, 4], size=4, replace=False))
        cost = float(rng.uniform(0.5, 2.0))
        menus.append(DeltaMenu(f"f{i}", deltas=deltas, unit_cost=cost))
        options[f"f{i}"] = [(d, cost * abs(d)) for d in deltas]
    fs = min_cost_flipset(model, x, desired, ActionGrid(menus=tuple(menus)))
    expected = oracles.brute_force_flipset(model, x, desired, options, schema.names)
    if expected is None:
        assert fs is None
    else:
        assert fs is not None
        assert fs.total_cost == pytest.approx(expected[0], abs=1e-9)


def test_flipset_respects_budget():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 0.0}, bias=0.0)
    x = {"a": -5.0, "b": 0.0}
    grid = ActionGrid(menus=(DeltaMenu("a", deltas=(6.0,), unit_cost=1.0),))
    assert min_cost_flipset(model, x, 1, grid, budget=3.0) is None
    assert min_cost_flipset(model, x, 1, grid, budget=10.0) is not None


def test_flipset_direction_constraint_rejected():
    schema = FeatureSchema((FeatureSpec("up", "continuous", (-10, 10), direction="increase-only"),))
    model = LinearModel(schema, {"up": 1.0}, bias=0.0)
    grid = ActionGrid(menus=(DeltaMenu("up", deltas=(-1.0,)),))
    with pytest.raises(SchemaError):
        min_cost_flipset(model, {"up": -5.0}, 1, grid)


def test_flipset_empty_grid_rejected():
    schema = pair_schema()
    model = LinearModel(schema, {"a": 1.0, "b": 0.0}, bias=0.0)
    with pytest.raises(ValueError):
        min_cost_flipset(model, {"a": -5.0, "b": 0.0}, 1, ActionGrid(menus=()))


def test_flipset_condition_gates_conditionally_mutable_feature():
    schema = FeatureSchema(
        (
            FeatureSpec("gate", "continuous", (0, 10), mutability="immutable"),
            FeatureSpec("v", "continuous", (-10, 10), mutability="conditionally-mutable"),
        )
    )
    model = LinearModel(schema, {"gate": 0.0, "v": 1.0}, bias=0.0)
    menu = DeltaMenu("v", deltas=(6.0,), condition=("gate", ">=", 5.0))
    grid = ActionGrid(menus=(menu,))
    assert min_cost_flipset(model, {"gate": 1.0, "v": -5.0}, 1, grid) is None
    assert min_cost_flipset(model, {"gate": 6.0, "v": -5.0}, 1, grid) is not None


def test_outputs_always_valid_and_immutables_untouched():
    rng = np.random.default_rng(2024)
    for seed in range(10):
        schema, model, x, mad = small_random_setup(seed + 40)
        desired = 1 - classify(model, x)
        cf = nearest_counterfactual(model, x, desired, SearchGrid.from_schema(schema), mad)
        if cf is not None:
            assert classify(model, cf.target) == desired
            assert cf.target["frozen"] == x["frozen"]
            assert cf.changed == {n for n in schema.names if cf.target[n] != x[n]}
