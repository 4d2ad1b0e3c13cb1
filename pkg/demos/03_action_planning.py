"""Plan concrete actions that carry a denied applicant to an approved state.

Builds the goal-directed MDP from an action catalog (stochastic outcomes,
costs, preconditions), solves it with value iteration and tabular Q-learning,
and assesses the resulting policies: reachability of the goal and expected
cost to get there.
"""

from directive_recourse import (
    build_recourse_mdp,
    policy_cost,
    q_learning,
    reachability,
    simulate_policy,
    value_iteration,
)
from directive_recourse.fixtures import lending_demo

demo = lending_demo()
print("action catalog:")
for action in demo.catalog.actions:
    outcomes = ", ".join(f"{o.prob:.0%} {dict(o.effects) or 'no change'}" for o in action.outcomes)
    print(f"  [{action.cost:>3.0f}] {action.name} -> {outcomes}")

print("\n=== Build the recourse MDP from the denied profile ===")
mdp = build_recourse_mdp(demo.schema, demo.catalog, demo.model, demo.profile, desired=1)
print(f"states: {mdp.n_states}, goals: {len(mdp.goals)}, dead ends: {len(mdp.dead_ends)}")

print("\n=== Solve by value iteration ===")
vi = value_iteration(mdp)
print(f"sweeps: {len(vi.residuals)}, final residual: {vi.residuals[-1]:.2e}")
print(f"value at start: {vi.value[mdp.initial]:.3f}")
print(f"first action: {vi.action_name(mdp, mdp.initial)!r}")
print(f"goal reachability: {reachability(mdp, vi):.3f}")
print(f"expected cost to goal: {policy_cost(mdp, vi):.2f}")

print("\n=== Solve by tabular Q-learning (seeded, reproducible) ===")
ql = q_learning(mdp, episodes=8000, seed=42)
print(f"first action: {ql.action_name(mdp, mdp.initial)!r}")
agree = ql.choice[mdp.initial] == vi.choice[mdp.initial]
print(f"agrees with value iteration at the start state: {agree}")

print("\n=== Roll the policy forward ===")
for seed in range(3):
    traj = simulate_policy(mdp, vi, seed=seed)
    steps = " -> ".join(traj.actions) or "(already at goal)"
    print(f"  seed {seed}: {steps} | cost {traj.cost:.0f} | reached={traj.reached_goal}")
