"""Seeded generators for schemas, models, and synthetic MDPs used in tests."""

from __future__ import annotations

import numpy as np

from directive_recourse.model import LinearModel
from directive_recourse.planner import Action, ActionCatalog, Outcome, RecourseMdp
from directive_recourse.schema import FeatureSchema, FeatureSpec


def small_schema() -> FeatureSchema:
    """Mixed-kind schema with one immutable feature, used across random tests."""
    return FeatureSchema(
        (
            FeatureSpec("age_band", "continuous", (0.0, 1.0), "", "immutable", "free", step=0.1),
            FeatureSpec("balance", "continuous", (0.0, 10.0), "$", "actionable", "free", step=1.0),
            FeatureSpec("margin", "continuous", (-5.0, 5.0), "", "actionable", "free", step=0.5),
            FeatureSpec("tier", "ordinal", (0, 6), "", "actionable", "free", values=tuple(range(7)), step=1),
            FeatureSpec("tenure", "continuous", (0.0, 100.0), "months", "conditionally-mutable", "increase-only", step=10.0),
        )
    )


def random_model(schema: FeatureSchema, rng: np.random.Generator) -> LinearModel:
    scale = {name: max(abs(schema.by_name[name].bounds[0]), abs(schema.by_name[name].bounds[1]), 1.0) for name in schema.names}
    weights = {name: float(rng.normal(0.0, 2.0)) / scale[name] for name in schema.names}
    return LinearModel(schema=schema, weights=weights, bias=float(rng.normal(0.0, 1.0)))


def random_instance(schema: FeatureSchema, rng: np.random.Generator) -> dict[str, float]:
    x = {}
    for spec in schema.features:
        if spec.kind in ("ordinal", "categorical"):
            x[spec.name] = float(spec.values[rng.integers(len(spec.values))])
        else:
            lo, hi = spec.bounds
            x[spec.name] = float(rng.uniform(lo, hi))
    return x


def synthetic_mdp(
    n_states: int,
    action_specs: list[tuple[str, float]],
    transitions: dict[tuple[int, int], list[tuple[int, float]]],
    goals: set[int],
    discount: float,
    goal_bonus: float,
    initial: int = 0,
) -> RecourseMdp:
    """Assemble a RecourseMdp directly from an abstract transition table."""
    schema = FeatureSchema((FeatureSpec("state", "ordinal", (0, n_states - 1), "", "actionable", "free",
                                        values=tuple(range(n_states))),))
    catalog = ActionCatalog(
        actions=tuple(
            Action(name=name, cost=cost, outcomes=(Outcome(prob=1.0, effects={}),), class_tag=name)
            for name, cost in action_specs
        )
    )
    trans = {}
    enabled_somewhere = set()
    for (s, a), succ in transitions.items():
        if s in goals:
            continue
        trans[(s, a)] = tuple(succ)
        enabled_somewhere.add(s)
    dead_ends = frozenset(s for s in range(n_states) if s not in goals and s not in enabled_somewhere)
    return RecourseMdp(
        schema=schema,
        catalog=catalog,
        state_keys=tuple((i,) for i in range(n_states)),
        representatives=tuple({"state": float(i)} for i in range(n_states)),
        transitions=trans,
        discount=discount,
        goal_bonus=goal_bonus,
        initial=initial,
        goals=frozenset(goals),
        dead_ends=dead_ends,
        desired_label=1,
    )


def random_goal_mdp(
    seed: int,
    deterministic: bool,
    max_states: int = 30,
) -> RecourseMdp:
    """Random MDP where the last state is the goal and is reachable from everywhere.

    Every non-goal state gets one 'forward' action to a strictly larger state,
    so the goal is always eventually reachable; extra actions may point
    anywhere. Deterministic variants use a discount close to 1 and a large
    goal bonus so optimal discounted behaviour is minimum-cost behaviour;
    stochastic variants use a small discount so a depth-50 horizon is
    effectively exact.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, max_states + 1))
    goal = n - 1
    n_actions = int(rng.integers(2, 5))
    action_specs = [(f"a{j}", float(rng.integers(1, 10))) for j in range(n_actions)]
    transitions: dict[tuple[int, int], list[tuple[int, float]]] = {}

    def successors(target_pool: list[int]) -> list[tuple[int, float]]:
        if deterministic:
            return [(int(rng.choice(target_pool)), 1.0)]
        k = int(rng.integers(1, 4))
        targets = rng.choice(target_pool, size=min(k, len(target_pool)), replace=False)
        raw = rng.uniform(0.2, 1.0, size=len(targets))
        probs = raw / raw.sum()
        merged: dict[int, float] = {}
        for t, p in zip(targets, probs):
            merged[int(t)] = merged.get(int(t), 0.0) + float(p)
        return sorted(merged.items())

    for s in range(goal):
        forward_pool = list(range(s + 1, n))
        transitions[(s, 0)] = successors(forward_pool)
        for j in range(1, n_actions):
            if rng.random() < 0.7:
                transitions[(s, j)] = successors(list(range(n)))
    if deterministic:
        discount, bonus = 1.0 - 1e-5, 500.0
    else:
        discount, bonus = 0.6, 90.0
    return synthetic_mdp(n, action_specs, transitions, {goal}, discount, bonus)


def q_benchmark_suite(size: int = 10, min_gap: float = 0.05) -> list[RecourseMdp]:
    """Deterministic MDPs whose optimal trajectories have clear action margins.

    Candidate seeds are scanned in order and an MDP is accepted only when,
    along the optimal trajectory, the best action beats the runner-up by at
    least ``min_gap`` in optimal Q value. The margin keeps the Q-learning
    argmax comparison meaningful: exact Q ties would make the learned argmax
    arbitrary.
    """
    from directive_recourse.planner import value_iteration

    suite = []
    seed = 1000
    while len(suite) < size:
        mdp = random_goal_mdp(seed, deterministic=True, max_states=6)
        seed += 1
        policy = value_iteration(mdp, epsilon=1e-10)
        s, ok, hops = mdp.initial, True, 0
        while s not in mdp.goals and hops < 50:
            qs = sorted(
                (
                    sum(p * (mdp.reward(s, a, t) + mdp.discount * policy.value[t]) for t, p in mdp.transitions[(s, a)])
                    for a in mdp.enabled_actions(s)
                ),
                reverse=True,
            )
            if len(qs) > 1 and qs[0] - qs[1] < min_gap:
                ok = False
                break
            s = mdp.transitions[(s, policy.choice[s])][0][0]
            hops += 1
        if ok and hops >= 1:
            suite.append(mdp)
    return suite


def reachability_fixtures() -> list[tuple[RecourseMdp, float, float | None]]:
    """Stochastic MDPs with hand-derived reachability and expected cost.

    Returns (mdp, exact_reachability, exact_cost or None when the cost has no
    closed form and only the simulation cross-check applies).
    """
    fixtures: list[tuple[RecourseMdp, float, float | None]] = []

    # Retry loops: success p, failure self-loop; reach 1, cost c/p.
    for p, c in ((0.3, 1.0), (0.5, 3.0), (0.7, 2.0), (0.9, 5.0)):
        mdp = synthetic_mdp(
            2, [("retry", c)], {(0, 0): [(0, 1 - p), (1, p)]}, goals={1}, discount=0.9, goal_bonus=10 * c
        )
        fixtures.append((mdp, 1.0, c / p))

    # One-shot gambles: goal with probability p, else an absorbing dead end.
    for p, c in ((0.8, 2.0), (0.6, 1.0), (0.9, 4.0)):
        mdp = synthetic_mdp(
            3, [("gamble", c)], {(0, 0): [(1, p), (2, 1 - p)]}, goals={1}, discount=0.9, goal_bonus=10 * c
        )
        fixtures.append((mdp, p, c))

    # Branching chains: a stochastic hop that either shortcuts to the goal or
    # detours through one more paid step; reach 1, cost c0 + (1-p)*c1.
    for p, c0, c1 in ((0.5, 1.0, 2.0), (0.25, 2.0, 2.0), (0.75, 1.0, 4.0)):
        mdp = synthetic_mdp(
            3,
            [("hop", c0), ("finish", c1)],
            {(0, 0): [(2, p), (1, 1 - p)], (1, 1): [(2, 1.0)]},
            goals={2},
            discount=0.9,
            goal_bonus=40.0,
        )
        fixtures.append((mdp, 1.0, c0 + (1 - p) * c1))
    return fixtures
