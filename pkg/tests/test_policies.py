"""Index-policy layer: exploration functions, index formulas, switch
rules, arm selection, and state updates."""

import math

import numpy as np
import pytest

from bandit_switch import (
    BanditInstance,
    Bernoulli,
    PolicySpec,
    PolicyState,
    compute_index,
    log_plus,
    moss_index,
    phi,
    select_arm,
    switch_threshold,
    switch_value,
    update,
)


# ---------------------------------------------------------------------------
# exploration functions


def test_log_plus_values():
    assert log_plus(0.5) == 0.0
    assert log_plus(1.0) == 0.0
    assert log_plus(math.e**2) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        log_plus(0.0)


def test_phi_values():
    assert phi(0.5) == 0.0
    assert phi(1.0) == 0.0
    assert phi(math.e) == pytest.approx(1.0 + math.log(2.0), abs=1e-12)
    with pytest.raises(ValueError):
        phi(-1.0)


def test_phi_dominates_log_plus_and_is_nondecreasing():
    xs = np.geomspace(1e-3, 1e6, 200)
    prev = 0.0
    for x in xs:
        val = phi(float(x))
        assert val >= log_plus(float(x)) - 1e-15
        assert val >= prev - 1e-12
        prev = val


# ---------------------------------------------------------------------------
# index formulas


def test_moss_index_vanishing_bonus():
    # once n reaches the ratio the log_plus bonus is exactly zero
    assert moss_index(0.37, 10, 10.0) == 0.37
    assert moss_index(0.37, 25, 10.0) == 0.37


def test_moss_index_examples():
    assert moss_index(0.5, 1, math.e**2) == pytest.approx(1.5, abs=1e-12)
    assert moss_index(0.9, 4, 100.0 / 2.0) == pytest.approx(0.9 + math.sqrt(math.log(12.5) / 8.0), abs=1e-12)
    assert moss_index(0.9, 4, 50.0) == pytest.approx(1.46189, abs=1e-4)


def test_switch_threshold_examples():
    assert switch_threshold(32, 1, 0.2) == 2
    assert switch_threshold(3, 7, 0.2) == 0
    assert switch_threshold(512, 2, 8.0 / 9.0) == 138
    with pytest.raises(ValueError):
        switch_threshold(0, 1)


def test_switch_value_conventions():
    # theoretical exponent floors the power; the empirical 8/9 floors the
    # ratio and keeps the power real-valued
    assert switch_value(1000, 3, 0.2) == float(math.floor((1000 / 3) ** 0.2))
    assert switch_value(512, 2, 8.0 / 9.0) == pytest.approx(256.0 ** (8.0 / 9.0), rel=1e-12)


# ---------------------------------------------------------------------------
# PolicySpec


def test_policy_spec_validation():
    with pytest.raises(ValueError):
        PolicySpec("moss")  # needs horizon
    with pytest.raises(ValueError):
        PolicySpec("klucb")
    with pytest.raises(ValueError):
        PolicySpec("nope")
    with pytest.raises(ValueError):
        PolicySpec("moss", horizon=100, exploration="log_t")
    with pytest.raises(ValueError):
        PolicySpec("klucb-switch", horizon=100, switch_exponent=1.2)
    spec = PolicySpec("ucb")
    assert spec.exploration == "log_t"


def test_policy_spec_config_round_trip():
    specs = [
        PolicySpec("ucb", label="UCB"),
        PolicySpec("moss", horizon=1000),
        PolicySpec("klucb-switch-anytime", switch_exponent=8.0 / 9.0),
        PolicySpec("klucb-gauss", sigma=0.25),
        PolicySpec("ucb", ucb_classic=True),
    ]
    for spec in specs:
        assert PolicySpec.from_config(spec.to_config()) == spec
    with pytest.raises(ValueError):
        PolicySpec.from_config({"family": "ucb", "bogus": 3})


# ---------------------------------------------------------------------------
# state updates


def test_update_postconditions():
    state = PolicyState.fresh(2)
    update(state, 0, 1.0)
    assert state.counts[0] == 1
    assert state.mean(0) == 1.0
    update(state, 0, 0.2)
    update(state, 0, 0.4)
    assert state.mean(0) == pytest.approx((1.0 + 0.2 + 0.4) / 3.0, abs=1e-12)
    assert state.t == 3
    with pytest.raises(ValueError):
        update(state, 0, 1.5)


def test_counts_sum_to_time_after_seeded_run():
    rng = np.random.default_rng(20)
    bandit = BanditInstance((Bernoulli(0.7), Bernoulli(0.4), Bernoulli(0.1)))
    spec = PolicySpec("moss-anytime")
    state = PolicyState.fresh(3, rng=np.random.default_rng(99))
    for step in range(1, 1001):
        arm = step - 1 if step <= 3 else select_arm(spec, state)
        update(state, arm, float(bandit.arms[arm].quantile(rng.random())))
        assert sum(state.counts) == state.t == step
        n = state.counts[arm]
        assert state.sums[arm] / n == pytest.approx(state.dists[arm].mean, abs=1e-12)


# ---------------------------------------------------------------------------
# compute_index semantics


def make_state(counts, sums, t):
    k = len(counts)
    state = PolicyState.fresh(k)
    for a in range(k):
        n = counts[a]
        if n == 0:
            continue
        mean = sums[a] / n
        for _ in range(n):
            update(state, a, mean)
    state.t = t
    return state


def test_unpulled_arm_raises():
    state = PolicyState.fresh(2)
    update(state, 0, 0.5)
    with pytest.raises(ValueError):
        compute_index(PolicySpec("ucb"), state, 1)


def test_switch_equals_moss_branch_exactly():
    t_hor = 100
    sw = PolicySpec("klucb-switch", horizon=t_hor)
    mo = PolicySpec("moss", horizon=t_hor)
    state = make_state([30, 8], [21.0, 3.2], 38)
    f = switch_value(t_hor, 2, 0.2)
    for arm in range(2):
        assert state.counts[arm] > f
        assert compute_index(sw, state, arm) == compute_index(mo, state, arm)


def test_klucb_threshold_zero_returns_mean():
    t_hor = 20
    spec = PolicySpec("klucb", horizon=t_hor)
    state = make_state([10, 10], [7.0, 3.0], 20)
    assert compute_index(spec, state, 0) == pytest.approx(0.7, abs=1e-12)


def test_gauss_index_is_moss_with_matching_constant():
    # 2 sigma^2 = 1/2 at sigma = 1/2, so the indices coincide exactly
    state = make_state([5, 3], [2.5, 2.1], 8)
    gauss = PolicySpec("klucb-gauss", sigma=0.5, horizon=100)
    mo = PolicySpec("moss", horizon=100)
    for arm in range(2):
        assert compute_index(gauss, state, arm) == pytest.approx(compute_index(mo, state, arm), abs=1e-15)


def test_ucb_classic_flag():
    state = make_state([4, 4], [2.0, 2.0], 8)
    idx = compute_index(PolicySpec("ucb"), state, 0)
    idx_classic = compute_index(PolicySpec("ucb", ucb_classic=True), state, 0)
    assert idx == pytest.approx(0.5 + math.sqrt(math.log(8) / 8.0), abs=1e-12)
    assert idx_classic == pytest.approx(0.5 + math.sqrt(2.0 * math.log(8) / 4.0), abs=1e-12)


def test_pinsker_index_ordering_on_random_states():
    rng = np.random.default_rng(21)
    t_hor = 200
    kl_t = PolicySpec("klucb", horizon=t_hor)
    mo_t = PolicySpec("moss", horizon=t_hor)
    sw_t = PolicySpec("klucb-switch", horizon=t_hor, switch_exponent=8.0 / 9.0)
    kl_a = PolicySpec("klucb-anytime")
    mo_a = PolicySpec("moss-anytime")
    sw_a = PolicySpec("klucb-switch-anytime", switch_exponent=8.0 / 9.0)
    for _ in range(30):
        k = int(rng.integers(2, 4))
        state = PolicyState.fresh(k)
        for step in range(1, int(rng.integers(k + 1, 120))):
            arm = int(rng.integers(k))
            update(state, arm, float(rng.integers(0, 2)))
        for arm in range(k):
            if state.counts[arm] == 0:
                continue
            u_kl, u_sw, u_m = (compute_index(s, state, arm) for s in (kl_t, sw_t, mo_t))
            assert u_kl <= u_sw + 1e-9
            assert u_sw <= u_m + 1e-9
            u_kla, u_swa, u_ma = (compute_index(s, state, arm) for s in (kl_a, sw_a, mo_a))
            assert u_kla <= u_swa + 1e-9
            assert u_swa <= u_ma + 1e-9


def test_anytime_indices_below_horizon_phi_counterparts():
    # with the same augmented exploration, replacing the running time by
    # the horizon can only increase an index (t <= T, phi nondecreasing)
    rng = np.random.default_rng(22)
    t_hor = 300
    kl_a = PolicySpec("klucb-anytime", exploration="augmented_phi")
    kl_t_phi = PolicySpec("klucb", horizon=t_hor, exploration="augmented_phi")
    mo_a = PolicySpec("moss-anytime", exploration="augmented_phi")
    mo_t_phi = PolicySpec("moss", horizon=t_hor, exploration="augmented_phi")
    for _ in range(20):
        state = PolicyState.fresh(2)
        for step in range(1, int(rng.integers(3, t_hor + 1))):
            update(state, int(rng.integers(2)), float(rng.integers(0, 2)))
        assert state.t <= t_hor
        for arm in range(2):
            if state.counts[arm] == 0:
                continue
            assert compute_index(kl_a, state, arm) <= compute_index(kl_t_phi, state, arm) + 1e-9
            assert compute_index(mo_a, state, arm) <= compute_index(mo_t_phi, state, arm) + 1e-9


def test_imed_prefers_undersampled_equal_mean_arm():
    # equal means: the divergence term vanishes, leaving ln N; the arm
    # with fewer pulls gets the smaller score and is selected
    state = make_state([20, 5], [10.0, 2.5], 25)
    spec = PolicySpec("imed")
    s0 = compute_index(spec, state, 0)
    s1 = compute_index(spec, state, 1)
    assert s1 < s0
    assert select_arm(spec, state, tie_u=0.0) == 1


# ---------------------------------------------------------------------------
# selection


def test_select_strict_argmax():
    state = make_state([3, 3], [2.7, 0.6], 6)
    assert select_arm(PolicySpec("ucb"), state, tie_u=0.99) == 0


def test_tie_break_is_uniform():
    state = make_state([5, 5, 5], [2.0, 2.0, 2.0], 15)
    spec = PolicySpec("ucb")
    rng = np.random.default_rng(23)
    picks = np.array([select_arm(spec, state, tie_u=float(rng.random())) for _ in range(10_000)])
    freq = np.bincount(picks, minlength=3) / picks.size
    se = math.sqrt((1 / 3) * (2 / 3) / picks.size)
    assert np.all(np.abs(freq - 1.0 / 3.0) <= 3.0 * se)


def test_argmax_invariant_to_constant_mean_shift():
    # MOSS index = mean + bonus(n); shifting every mean by a constant
    # shifts every index equally and keeps the argmax set
    spec = PolicySpec("moss", horizon=100)
    base = make_state([4, 9, 2], [2.0, 5.4, 0.6], 15)
    shifted = make_state([4, 9, 2], [2.0 + 4 * 0.1, 5.4 + 9 * 0.1, 0.6 + 2 * 0.1], 15)
    assert select_arm(spec, base, tie_u=0.5) == select_arm(spec, shifted, tie_u=0.5)


def test_determinism_for_fixed_seed_and_rewards():
    bandit = BanditInstance((Bernoulli(0.6), Bernoulli(0.5)))
    spec = PolicySpec("klucb-switch-anytime", switch_exponent=8.0 / 9.0)

    def run():
        reward_rng = np.random.default_rng(77)
        state = PolicyState.fresh(2, rng=np.random.default_rng(5))
        actions = []
        for step in range(1, 200):
            arm = step - 1 if step <= 2 else select_arm(spec, state)
            update(state, arm, float(bandit.arms[arm].quantile(reward_rng.random())))
            actions.append(arm)
        return actions

    assert run() == run()
