"""The index-policy family on a shared state: how the empirical-
likelihood, switch, and minimax indices relate, and when the switch
policy changes branch.

Run:  python demos/02_policy_indices.py
"""

import numpy as np

from bandit_switch import (
    BanditInstance,
    Bernoulli,
    PolicySpec,
    PolicyState,
    compute_index,
    switch_threshold,
    update,
)

rng = np.random.default_rng(12)
bandit = BanditInstance((Bernoulli(0.8), Bernoulli(0.6)))
horizon = 2000

print("Replaying one short history and printing every family's index on")
print("the same state.  The sandwich klucb <= switch <= moss always holds.")
print()

state = PolicyState.fresh(2, rng=rng)
for step in range(1, 41):
    arm = (step - 1) % 2 if step <= 2 else int(rng.integers(2))
    update(state, arm, float(bandit.arms[arm].quantile(rng.random())))

specs = {
    "ucb": PolicySpec("ucb"),
    "moss (T known)": PolicySpec("moss", horizon=horizon),
    "klucb (T known)": PolicySpec("klucb", horizon=horizon),
    "switch (T known)": PolicySpec("klucb-switch", horizon=horizon),
    "moss-anytime": PolicySpec("moss-anytime"),
    "klucb-anytime": PolicySpec("klucb-anytime"),
    "switch-anytime": PolicySpec("klucb-switch-anytime"),
    "imed (argmin!)": PolicySpec("imed"),
}

print(f"state after t = {state.t} pulls: counts = {state.counts}, "
      f"means = {[round(state.mean(a), 3) for a in range(2)]}")
print()
print(f"{'family':>18} | {'arm 0':>10} | {'arm 1':>10}")
print("-" * 46)
for name, spec in specs.items():
    i0 = compute_index(spec, state, 0)
    i1 = compute_index(spec, state, 1)
    print(f"{name:>18} | {i0:10.5f} | {i1:10.5f}")

print()
print("Switch thresholds (pull count at which an arm moves to the minimax")
print("index).  The theoretical rule floors (tau/K)^(1/5); the empirical")
print("rule floor(tau/K)^(8/9) delays the switch much further:")
print()
print(f"{'tau':>8} | {'f(tau, K=2), 1/5':>18} | {'f(tau, K=2), 8/9':>18}")
print("-" * 50)
for tau in (10, 100, 1000, 10_000, 100_000):
    f_theory = switch_threshold(tau, 2, 0.2)
    f_emp = switch_threshold(tau, 2, 8.0 / 9.0)
    print(f"{tau:>8} | {f_theory:>18} | {f_emp:>18}")

print()
print("Anytime switch on a growing history: the branch is re-evaluated at")
print("every step from the current pull count, so an arm can switch back.")
state = PolicyState.fresh(2, rng=rng)
sw = PolicySpec("klucb-switch-anytime", switch_exponent=8.0 / 9.0)
last_branch = None
for step in range(1, 201):
    arm = (step - 1) % 2 if step <= 2 else int(rng.integers(2))
    update(state, arm, float(bandit.arms[arm].quantile(rng.random())))
    if step < 3:
        continue
    from bandit_switch.policies import switch_value

    f = switch_value(state.t, 2, 8.0 / 9.0)
    branch = "klucb" if state.counts[0] <= f else "moss"
    if branch != last_branch:
        print(f"  t = {state.t:>4}: arm 0 has {state.counts[0]:>3} pulls, f(t, K) = {f:7.2f} -> {branch} branch")
        last_branch = branch
