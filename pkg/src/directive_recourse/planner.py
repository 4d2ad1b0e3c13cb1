"""Goal-directed recourse MDP: construction, solving, and policy assessment.

States are binned feature vectors reachable from the instance's bin under the
action catalog; the goal set is every state whose representative the
classifier labels with the desired outcome. Rewards are negative action costs
plus a bonus on transitions entering the goal set, goals are absorbing, and
the MDP is solved either by value iteration or tabular Q-learning.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .counterfactual import _OPS
from .errors import CatalogError, InfeasibleError, SchemaError, StateCapError
from .model import LinearModel, _classify_unchecked
from .schema import FeatureSchema


@dataclass(frozen=True)
class Outcome:
    """One stochastic result of an action: feature deltas with a probability."""

    prob: float
    effects: Mapping[str, float]


@dataclass(frozen=True)
class Action:
    name: str
    cost: float
    outcomes: tuple[Outcome, ...]
    class_tag: str | None = None
    preconditions: tuple[tuple[str, str, float], ...] = ()

    def preconditions_hold(self, x: Mapping[str, float]) -> bool:
        return all(_OPS[op](float(x[feat]), value) for feat, op, value in self.preconditions)


@dataclass(frozen=True)
class ActionCatalog:
    """Ordered action vocabulary; order is part of the tie-breaking contract."""

    actions: tuple[Action, ...]

    def __post_init__(self):
        names = [a.name for a in self.actions]
        if len(set(names)) != len(names):
            raise CatalogError("action names must be unique")
        for a in self.actions:
            if a.cost < 0:
                raise CatalogError(f"{a.name}: cost must be >= 0")
            if not a.outcomes:
                raise CatalogError(f"{a.name}: at least one outcome required")
            total = sum(o.prob for o in a.outcomes)
            if abs(total - 1.0) > 1e-9:
                raise CatalogError(f"{a.name}: outcome probabilities sum to {total}, expected 1")

    def validate_against(self, schema: FeatureSchema) -> None:
        for a in self.actions:
            for o in a.outcomes:
                for feat in o.effects:
                    spec = schema.by_name.get(feat)
                    if spec is None:
                        raise CatalogError(f"{a.name}: effect on unknown feature {feat!r}")
                    if not spec.mutable:
                        raise CatalogError(f"{a.name}: effect touches immutable feature {feat!r}")
            for feat, op, _ in a.preconditions:
                if feat not in schema.by_name:
                    raise CatalogError(f"{a.name}: precondition on unknown feature {feat!r}")
                if op not in _OPS:
                    raise CatalogError(f"{a.name}: unknown precondition operator {op!r}")

    def by_name(self, name: str) -> Action:
        for a in self.actions:
            if a.name == name:
                return a
        raise KeyError(name)

    def max_cost(self) -> float:
        return max((a.cost for a in self.actions), default=1.0)

    @classmethod
    def from_json_obj(cls, data) -> "ActionCatalog":
        actions = []
        for d in data["actions"] if isinstance(data, Mapping) else data:
            outcomes = tuple(
                Outcome(prob=float(o["prob"]), effects={k: float(v) for k, v in o["effects"].items()})
                for o in d["outcomes"]
            )
            pre = tuple(
                (p["feature"], p["op"], float(p["value"])) for p in d.get("preconditions", ())
            )
            actions.append(
                Action(
                    name=d["name"],
                    cost=float(d.get("cost", 1.0)),
                    outcomes=outcomes,
                    class_tag=d.get("class_tag"),
                    preconditions=pre,
                )
            )
        return cls(actions=tuple(actions))

    def to_dict(self) -> dict:
        return {
            "actions": [
                {
                    "name": a.name,
                    "class_tag": a.class_tag,
                    "cost": a.cost,
                    "outcomes": [{"prob": o.prob, "effects": dict(o.effects)} for o in a.outcomes],
                    "preconditions": [
                        {"feature": f, "op": op, "value": v} for f, op, v in a.preconditions
                    ],
                }
                for a in self.actions
            ]
        }


class _FeatureBins:
    """Maps one feature's values to bin indices and representative values."""

    def __init__(self, reps: list[float], edges: np.ndarray | None, values: tuple[float, ...] | None):
        self.reps = reps
        self._edges = edges
        self._value_index = {v: i for i, v in enumerate(values)} if values is not None else None

    def index_of(self, v: float) -> int | None:
        """Bin index for a value, or None when the value leaves the feature's domain."""
        if self._value_index is not None:
            return self._value_index.get(v)
        e = self._edges
        if v < e[0] or v > e[-1]:
            return None
        i = int(np.searchsorted(e, v, side="right")) - 1
        return min(max(i, 0), len(self.reps) - 1)


def _build_bins(
    schema: FeatureSchema,
    x: Mapping[str, float],
    binning: Mapping[str, Sequence[float]] | None,
) -> dict[str, _FeatureBins]:
    binning = binning or {}
    out: dict[str, _FeatureBins] = {}
    for spec in schema.features:
        if not spec.mutable:
            # Immutable features live in a single bin pinned at the instance's value.
            out[spec.name] = _FeatureBins(reps=[float(x[spec.name])], edges=None, values=(float(x[spec.name]),))
        elif spec.kind in ("ordinal", "categorical"):
            vals = tuple(sorted(spec.values))
            out[spec.name] = _FeatureBins(reps=list(vals), edges=None, values=vals)
        else:
            lo, hi = spec.bounds
            if spec.name in binning:
                edges = np.asarray(sorted(binning[spec.name]), dtype=float)
                if len(edges) < 2 or edges[0] > lo or edges[-1] < hi:
                    raise SchemaError(f"{spec.name}: binning must cover bounds with >= 2 edges")
            else:
                step = spec.default_step()
                n = max(1, int(round((hi - lo) / step)))
                edges = np.linspace(lo, hi, n + 1)
            reps = [float(0.5 * (edges[i] + edges[i + 1])) for i in range(len(edges) - 1)]
            out[spec.name] = _FeatureBins(reps=reps, edges=edges, values=None)
    return out


@dataclass(frozen=True)
class RecourseMdp:
    """Finite goal-directed MDP over binned profile states."""

    schema: FeatureSchema
    catalog: ActionCatalog
    state_keys: tuple[tuple[int, ...], ...]
    representatives: tuple[Mapping[str, float], ...]
    transitions: Mapping[tuple[int, int], tuple[tuple[int, float], ...]]
    discount: float
    goal_bonus: float
    initial: int
    goals: frozenset[int]
    dead_ends: frozenset[int]
    desired_label: int

    @property
    def n_states(self) -> int:
        return len(self.state_keys)

    @property
    def n_actions(self) -> int:
        return len(self.catalog.actions)

    def enabled_actions(self, s: int) -> list[int]:
        return [a for a in range(self.n_actions) if (s, a) in self.transitions]

    def is_terminal(self, s: int) -> bool:
        return s in self.goals or s in self.dead_ends

    def reward(self, s: int, a: int, s2: int) -> float:
        r = -self.catalog.actions[a].cost
        if s2 in self.goals:
            r += self.goal_bonus
        return r


def build_recourse_mdp(
    schema: FeatureSchema,
    catalog: ActionCatalog,
    model: LinearModel,
    x: Mapping[str, float],
    desired: int,
    binning: Mapping[str, Sequence[float]] | None = None,
    discount: float = 0.95,
    goal_bonus: float | None = None,
    state_cap: int = 100_000,
) -> RecourseMdp:
    """Reachable closure from the instance's bin under the catalog's actions.

    An action is enabled in a state when its preconditions hold at the state's
    representative and every outcome keeps all features inside their domain.
    Goal states (representative classified with the desired label) are
    absorbing; the reward is the negative action cost plus ``goal_bonus``
    (default 10x the catalog's maximum cost) on transitions entering a goal.
    """
    schema.validate_vector(x)
    if not (0.0 < discount < 1.0):
        raise ValueError(f"discount must be in (0,1), got {discount}")
    catalog.validate_against(schema)
    if goal_bonus is None:
        goal_bonus = 10.0 * catalog.max_cost()

    bins = _build_bins(schema, x, binning)
    names = schema.names

    def key_of(vec: Mapping[str, float]) -> tuple[int, ...] | None:
        key = []
        for name in names:
            i = bins[name].index_of(float(vec[name]))
            if i is None:
                return None
            key.append(i)
        return tuple(key)

    def rep_of(key: tuple[int, ...]) -> dict[str, float]:
        return {name: bins[name].reps[k] for name, k in zip(names, key)}

    initial_key = key_of(x)
    if initial_key is None:
        raise SchemaError("instance does not fall inside the configured bins")

    index: dict[tuple[int, ...], int] = {initial_key: 0}
    keys: list[tuple[int, ...]] = [initial_key]
    reps: list[dict[str, float]] = [rep_of(initial_key)]
    goals: set[int] = set()
    dead_ends: set[int] = set()
    transitions: dict[tuple[int, int], tuple[tuple[int, float], ...]] = {}

    queue: deque[int] = deque([0])
    while queue:
        s = queue.popleft()
        rep = reps[s]
        if _classify_unchecked(model, rep) == desired:
            goals.add(s)  # absorbing: no outgoing transitions
            continue
        any_enabled = False
        for a_idx, action in enumerate(catalog.actions):
            if not action.preconditions_hold(rep):
                continue
            succ_keys = []
            feasible = True
            for outcome in action.outcomes:
                nxt = dict(rep)
                for feat, delta in outcome.effects.items():
                    nxt[feat] = nxt[feat] + delta
                k = key_of(nxt)
                if k is None:
                    feasible = False
                    break
                succ_keys.append((k, outcome.prob))
            if not feasible:
                continue
            any_enabled = True
            merged: dict[int, float] = {}
            for k, p in succ_keys:
                if k not in index:
                    if len(keys) >= state_cap:
                        raise StateCapError(cap=state_cap, reached=len(keys) + 1)
                    index[k] = len(keys)
                    keys.append(k)
                    reps.append(rep_of(k))
                    queue.append(index[k])
                t = index[k]
                merged[t] = merged.get(t, 0.0) + p
            transitions[(s, a_idx)] = tuple(sorted(merged.items()))
        if not any_enabled:
            dead_ends.add(s)

    if 0 in dead_ends:
        raise InfeasibleError("no enabled actions at the initial state")

    return RecourseMdp(
        schema=schema,
        catalog=catalog,
        state_keys=tuple(keys),
        representatives=tuple(reps),
        transitions=transitions,
        discount=discount,
        goal_bonus=goal_bonus,
        initial=0,
        goals=frozenset(goals),
        dead_ends=frozenset(dead_ends),
        desired_label=desired,
    )


@dataclass
class Policy:
    """State-to-action choice with the value function that produced it.

    ``choice[s]`` is an action index, or None as the terminal marker on goal
    states and dead ends. Extra solver diagnostics ride along: residual
    history for value iteration, the Q table for Q-learning.
    """

    choice: dict[int, int | None]
    value: dict[int, float]
    residuals: list[float] = field(default_factory=list)
    q_table: dict[int, np.ndarray] | None = None

    def action_name(self, mdp: RecourseMdp, s: int) -> str | None:
        a = self.choice.get(s)
        return None if a is None else mdp.catalog.actions[a].name

    def to_json_obj(self, mdp: RecourseMdp) -> dict:
        out = {}
        for s, a in sorted(self.choice.items()):
            key = ",".join(str(k) for k in mdp.state_keys[s])
            out[key] = {
                "action": None if a is None else mdp.catalog.actions[a].name,
                "value": self.value.get(s, 0.0),
            }
        return out


def _greedy_choice(mdp: RecourseMdp, values: np.ndarray) -> dict[int, int | None]:
    choice: dict[int, int | None] = {}
    for s in range(mdp.n_states):
        if mdp.is_terminal(s):
            choice[s] = None
            continue
        best_a, best_q = None, -math.inf
        for a in mdp.enabled_actions(s):
            q = sum(
                p * (mdp.reward(s, a, t) + mdp.discount * values[t])
                for t, p in mdp.transitions[(s, a)]
            )
            if q > best_q:
                best_q, best_a = q, a
        choice[s] = best_a
    return choice


def value_iteration(mdp: RecourseMdp, epsilon: float = 1e-6, max_sweeps: int = 1_000_000) -> Policy:
    """Bellman optimality iteration until the max-norm residual drops below epsilon.

    Terminal states (goals, dead ends) hold value 0: the goal bonus is paid on
    the transition entering the goal. Argmax ties resolve to the lowest
    catalog index.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    n = mdp.n_states
    values = np.zeros(n)
    nonterminal = [s for s in range(n) if not mdp.is_terminal(s)]
    residuals: list[float] = []
    for _ in range(max_sweeps):
        new = values.copy()
        for s in nonterminal:
            best = -math.inf
            for a in mdp.enabled_actions(s):
                q = sum(
                    p * (mdp.reward(s, a, t) + mdp.discount * values[t])
                    for t, p in mdp.transitions[(s, a)]
                )
                if q > best:
                    best = q
            new[s] = best if best > -math.inf else 0.0
        residual = float(np.max(np.abs(new - values))) if n else 0.0
        residuals.append(residual)
        values = new
        if residual < epsilon:
            break
    choice = _greedy_choice(mdp, values)
    return Policy(choice=choice, value={s: float(values[s]) for s in range(n)}, residuals=residuals)


def q_learning(
    mdp: RecourseMdp,
    episodes: int = 10_000,
    alpha: float = 0.1,
    epsilon_start: float = 1.0,
    epsilon_decay: float = 0.999,
    epsilon_floor: float = 0.05,
    max_steps: int = 100,
    seed: int = 0,
) -> Policy:
    """Tabular Q-learning with a deterministic pseudo-random stream.

    The same seed and hyperparameters reproduce the Q table bit for bit. The
    returned choice is the per-state argmax with the same lowest-index tie
    rule as value iteration; under-trained policies are possible and left to
    the caller to assess.
    """
    if episodes < 1:
        raise ValueError("episodes must be >= 1")
    rng = np.random.default_rng(seed)
    n_actions = mdp.n_actions
    q: dict[int, np.ndarray] = {}
    enabled: dict[int, list[int]] = {}

    def q_row(s: int) -> np.ndarray:
        if s not in q:
            acts = mdp.enabled_actions(s)
            enabled[s] = acts
            row = np.full(n_actions, -np.inf)
            row[acts] = 0.0
            q[s] = row
        return q[s]

    eps = epsilon_start
    for _ in range(episodes):
        s = mdp.initial
        for _ in range(max_steps):
            if mdp.is_terminal(s):
                break
            row = q_row(s)
            acts = enabled[s]
            if not acts:
                break
            if rng.random() < eps:
                a = int(acts[rng.integers(len(acts))])
            else:
                a = int(np.argmax(row))
            succ = mdp.transitions[(s, a)]
            u = rng.random()
            acc = 0.0
            t = succ[-1][0]
            for t2, p in succ:
                acc += p
                if u <= acc:
                    t = t2
                    break
            r = mdp.reward(s, a, t)
            if mdp.is_terminal(t):
                target = r
            else:
                target = r + mdp.discount * float(np.max(q_row(t)))
            row[a] += alpha * (target - row[a])
            s = t
        eps = max(epsilon_floor, eps * epsilon_decay)

    choice: dict[int, int | None] = {}
    value: dict[int, float] = {}
    for s in range(mdp.n_states):
        if mdp.is_terminal(s):
            choice[s] = None
            value[s] = 0.0
            continue
        row = q_row(s)
        choice[s] = int(np.argmax(row)) if enabled[s] else None
        value[s] = float(np.max(row)) if enabled[s] else 0.0
    return Policy(choice=choice, value=value, q_table=q)


@dataclass(frozen=True)
class Trajectory:
    states: tuple[int, ...]
    actions: tuple[str, ...]
    cost: float
    reached_goal: bool


def simulate_policy(mdp: RecourseMdp, policy: Policy, seed: int = 0, max_steps: int = 100) -> Trajectory:
    """One seeded rollout following the policy from the initial state."""
    if mdp.initial not in policy.choice:
        raise ValueError("policy is undefined at the initial state")
    rng = np.random.default_rng(seed)
    s = mdp.initial
    states = [s]
    actions: list[str] = []
    cost = 0.0
    for _ in range(max_steps):
        if s in mdp.goals:
            return Trajectory(tuple(states), tuple(actions), cost, True)
        a = policy.choice.get(s)
        if a is None:
            break
        action = mdp.catalog.actions[a]
        succ = mdp.transitions[(s, a)]
        u = rng.random()
        acc = 0.0
        t = succ[-1][0]
        for t2, p in succ:
            acc += p
            if u <= acc:
                t = t2
                break
        cost += action.cost
        actions.append(action.name)
        s = t
        states.append(s)
    return Trajectory(tuple(states), tuple(actions), cost, s in mdp.goals)


def _chain_successors(mdp: RecourseMdp, policy: Policy, s: int):
    a = policy.choice.get(s)
    if a is None:
        return None
    if (s, a) not in mdp.transitions:
        raise ValueError(f"policy chooses a disabled action in state {s}")
    return mdp.transitions[(s, a)]


def _reachable_under_policy(mdp: RecourseMdp, policy: Policy) -> list[int]:
    seen = {mdp.initial}
    queue = deque([mdp.initial])
    while queue:
        s = queue.popleft()
        if mdp.is_terminal(s):
            continue
        if s not in policy.choice:
            raise ValueError(f"policy undefined at reachable state {s}")
        succ = _chain_successors(mdp, policy, s)
        if succ is None:
            continue
        for t, _ in succ:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return sorted(seen)


def reachability(mdp: RecourseMdp, policy: Policy, tol: float = 1e-9, max_sweeps: int = 1_000_000) -> float:
    """Probability of eventually entering the goal set from the initial state.

    Iterative fixed point over the Markov chain the policy induces; states
    where the policy stops without reaching a goal absorb with probability 0.
    """
    states = _reachable_under_policy(mdp, policy)
    p = {s: 1.0 if s in mdp.goals else 0.0 for s in states}
    for _ in range(max_sweeps):
        delta = 0.0
        for s in states:
            if s in mdp.goals:
                continue
            succ = _chain_successors(mdp, policy, s)
            if succ is None:
                continue
            new = sum(pr * p[t] for t, pr in succ)
            delta = max(delta, abs(new - p[s]))
            p[s] = new
        if delta < tol:
            break
    return p[mdp.initial]


def policy_cost(mdp: RecourseMdp, policy: Policy, tol: float = 1e-9, max_sweeps: int = 1_000_000) -> float:
    """Expected undiscounted action cost until absorption.

    Reported as infinity when some probability mass never absorbs (the policy
    loops forever with positive probability), since the expected cost then
    diverges.
    """
    states = _reachable_under_policy(mdp, policy)

    # Absorption probability into any terminal (goal, dead end, or stop).
    # Iterated well past the decision threshold so a geometric tail is not
    # mistaken for escaping probability mass.
    absorbing = {s for s in states if mdp.is_terminal(s) or policy.choice.get(s) is None}
    q = {s: (1.0 if s in absorbing else 0.0) for s in states}
    for _ in range(max_sweeps):
        delta = 0.0
        for s in states:
            if s in absorbing:
                continue
            succ = _chain_successors(mdp, policy, s)
            new = sum(pr * q[t] for t, pr in succ)
            delta = max(delta, abs(new - q[s]))
            q[s] = new
        if delta < tol * 1e-3:
            break
    if q[mdp.initial] < 1.0 - tol:
        return math.inf

    c = {s: 0.0 for s in states}
    for _ in range(max_sweeps):
        delta = 0.0
        for s in states:
            succ = _chain_successors(mdp, policy, s)
            if succ is None:
                continue
            a = policy.choice[s]
            new = mdp.catalog.actions[a].cost + sum(pr * c[t] for t, pr in succ)
            delta = max(delta, abs(new - c[s]))
            c[s] = new
        if delta < tol:
            break
    return c[mdp.initial]
