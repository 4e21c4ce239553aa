"""Statistical and analytic checkers for the library's finite-time bounds.

Each checker turns one inequality into a report: a grid of checked points
with the empirical value, the theoretical bound, and a violation flag.
Monte-Carlo frequencies get a 3-sigma binomial allowance so the checks are
deterministic in expectation; the inequalities themselves are proven facts,
so any violation beyond that allowance indicates an implementation bug.

``run_suite`` groups the checkers into the named suites driven by the
command line (and by the acceptance tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import CH_REWARD, mix64, unit_uniform
from .distributions import (
    BanditInstance,
    Bernoulli,
    Dirac,
    Discrete,
    EmpiricalDistribution,
)
from .kinf import bernoulli_kl, kinf, kinf_weighted, klucb_index
from .policies import PolicySpec, PolicyState, compute_index, update
from .simulator import Scenario, monte_carlo, run_seed
from . import _vector

__all__ = [
    "CheckPoint",
    "BoundCheckReport",
    "theoretical_bounds",
    "BOUND_IDS",
    "lambert_w",
    "concentration_gamma",
    "refined_pull_rate",
    "kinf_grid_oracle_check",
    "bernoulli_identity_check",
    "regularity_check",
    "kinf_deviation_check",
    "kinf_integrated_deviation_check",
    "kinf_concentration_check",
    "gamma_floor_check",
    "hoeffding_max_check",
    "hoeffding_integrated_check",
    "index_ordering_check",
    "lambert_residual_check",
    "distribution_free_check",
    "distribution_dependent_check",
    "minimax_profile_check",
    "SUITES",
    "run_suite",
]


@dataclass
class CheckPoint:
    label: str
    empirical: float
    bound: float
    stderr: float = 0.0
    violation: bool = False


@dataclass
class BoundCheckReport:
    """One inequality checked over a grid of points."""

    bound_name: str
    points: list
    runs: int
    notes: str = ""
    values: dict = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return sum(p.violation for p in self.points)

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _point(label: str, empirical: float, bound: float, stderr: float = 0.0) -> CheckPoint:
    return CheckPoint(label, empirical, bound, stderr, empirical > bound + 3.0 * stderr)


def _band_point(label: str, empirical: float, lo: float, hi: float, stderr: float = 0.0) -> CheckPoint:
    ok = (lo - 3.0 * stderr) <= empirical <= (hi + 3.0 * stderr)
    return CheckPoint(f"{label} in [{lo:.6g}, {hi:.6g}]", empirical, hi, stderr, not ok)


# ---------------------------------------------------------------------------
# closed-form constants and special functions


BOUND_IDS = (
    "switch-known-horizon",
    "switch-anytime",
    "moss",
    "moss-anytime",
    "moss-anytime-augmented",
    "minimax-lower",
)


def theoretical_bounds(k: int, horizon: int, bound_id: str) -> float:
    """Closed-form regret bounds and the minimax lower bound, for overlays
    and acceptance checks."""
    if k < 1 or horizon < 1:
        raise ValueError("k and horizon must be >= 1")
    root = math.sqrt(k * horizon)
    if bound_id == "switch-known-horizon":
        return (k - 1) + 23.0 * root
    if bound_id == "switch-anytime":
        return (k - 1) + 44.0 * root
    if bound_id == "moss":
        return (k - 1) + 17.0 * root
    if bound_id == "moss-anytime":
        return (k - 1) + 30.0 * root
    if bound_id == "moss-anytime-augmented":
        return (k - 1) + 33.0 * root
    if bound_id == "minimax-lower":
        return min(root, float(horizon)) / 20.0
    raise ValueError(f"unknown bound id {bound_id!r}; known: {BOUND_IDS}")


def lambert_w(x: float) -> float:
    """Principal Lambert W on x > 0: the solution w > 0 of w e^w = x.

    Halley iteration seeded with ln x - ln ln x for x > e and with x
    itself below; iterates to 1e-12 relative steps.
    """
    if x <= 0.0:
        raise ValueError("lambert_w requires a positive argument")
    w = math.log(x) - math.log(math.log(x)) if x > math.e else x
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0)
        dw = f / denom
        w -= dw
        if w <= 0.0:
            w = 1e-300
        if abs(dw) <= 1e-12 * max(abs(w), 1e-12):
            break
    return w


def concentration_gamma(mu: float) -> float:
    """Variance proxy gamma = (16 e^-2 + ln^2(1/(1-mu))) / sqrt(1-mu)."""
    if not 0.0 < mu < 1.0:
        raise ValueError("mu must lie in (0, 1)")
    return (16.0 * math.exp(-2.0) + math.log(1.0 / (1.0 - mu)) ** 2) / math.sqrt(1.0 - mu)


def refined_pull_rate(k: int, horizon: int, mu_star: float, divergence: float) -> float:
    """Leading term of the refined sub-optimal-pull bound,
    W(ln(1/(1 - mu_star)) T / K) / divergence, for qualitative overlays.

    Sharper than the plain ln(T)/divergence rate by about ln ln T / div;
    its O(1) remainder terms are enormous at desk scale, so this is an
    overlay, not an asserted bound.
    """
    if not 0.0 < mu_star < 1.0:
        raise ValueError("mu_star must lie in (0, 1)")
    if divergence <= 0.0:
        raise ValueError("divergence must be positive")
    return lambert_w(math.log(1.0 / (1.0 - mu_star)) * horizon / k) / divergence


# ---------------------------------------------------------------------------
# solver oracles


def _random_empirical(rng: np.random.Generator, max_atoms: int = 20) -> EmpiricalDistribution:
    n_atoms = int(rng.integers(1, max_atoms + 1))
    vals = np.unique(rng.random(n_atoms))
    counts = rng.integers(1, 11, size=vals.size)
    return EmpiricalDistribution(vals, counts)


def _grid_oracle_chunk(args):
    jobs, grid_points = args
    lam_grid = np.linspace(0.0, 1.0, grid_points)
    chunk_size = 200_000
    worst = 0.0
    worst_label = ""
    with np.errstate(divide="ignore"):
        for label, values, counts, mu in jobs:
            dist = EmpiricalDistribution(values, counts)
            res = kinf(dist, mu)
            z = (dist.values - mu) / (1.0 - mu)
            w = dist.weights
            best = -math.inf
            buf = np.empty((chunk_size, z.size))
            for lo in range(0, grid_points, chunk_size):
                lam = lam_grid[lo : lo + chunk_size]
                view = buf[: lam.size]
                np.multiply.outer(lam, -z, out=view)
                np.log1p(view, out=view)
                best = max(best, float((view @ w).max()))
            gap = abs(res.value - best)
            if gap > worst:
                worst, worst_label = gap, label
    return worst, worst_label


def kinf_grid_oracle_check(
    n_dists: int = 500,
    mus_per_dist: int = 1,
    grid_points: int = 1_000_000,
    seed: int = 20_240_101,
    tol: float = 1e-6,
    parallelism: int = 2,
) -> BoundCheckReport:
    """Newton solver versus brute-force maximisation of the dual objective
    on a uniform lambda grid."""
    rng = np.random.default_rng(seed)
    jobs = []
    for i in range(n_dists):
        dist = _random_empirical(rng)
        m = dist.mean
        for _ in range(mus_per_dist):
            mu = float(rng.uniform(max(m - 0.05, 1e-3), 0.999))
            jobs.append((f"dist {i}, mu={mu:.4f}", dist.values, dist.counts, mu))
    parallelism = max(1, parallelism)
    if parallelism > 1 and len(jobs) > 8:
        from concurrent.futures import ProcessPoolExecutor

        bounds = np.linspace(0, len(jobs), parallelism * 2 + 1).astype(int)
        splits = [(jobs[lo:hi], grid_points) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_grid_oracle_chunk, splits))
    else:
        results = [_grid_oracle_chunk((jobs, grid_points))]
    worst, worst_label = max(results)
    points = [_point(f"max |newton - grid| ({worst_label})", worst, tol)]
    return BoundCheckReport(
        bound_name="kinf-grid-oracle",
        points=points,
        runs=n_dists * mus_per_dist,
        notes=f"{grid_points}-point uniform lambda grid",
        values={"worst_gap": worst},
    )


def bernoulli_identity_check(ps=None, mus_per_p: int = 50, tol: float = 1e-8) -> BoundCheckReport:
    """kinf on a two-atom {0,1} distribution equals the Bernoulli KL."""
    ps = ps if ps is not None else [round(0.1 * i, 1) for i in range(1, 10)]
    points = []
    worst = 0.0
    for p in ps:
        num = round(p * 10)
        dist = EmpiricalDistribution([0.0, 1.0], [10 - num, num])
        for mu in np.linspace(p + 1e-3, 0.99, mus_per_p):
            gap = abs(kinf(dist, float(mu)).value - bernoulli_kl(p, float(mu)))
            worst = max(worst, gap)
        points.append(_point(f"p={p}", worst, tol))
    return BoundCheckReport("kinf-bernoulli-identity", points, len(ps) * mus_per_p)


def regularity_check(samples: int = 10_000, seed: int = 20_240_102, tol: float = 1e-7) -> BoundCheckReport:
    """Two-sided local regularity of kinf in its mean argument:
    kinf(nu, mu - eps) + 2 eps^2 <= kinf(nu, mu) <= kinf(nu, mu - eps) + eps/(1 - mu)."""
    rng = np.random.default_rng(seed)
    worst_lower = -math.inf
    worst_upper = -math.inf
    for _ in range(samples):
        dist = _random_empirical(rng)
        m = dist.mean
        if m >= 0.985:
            continue
        mu = float(rng.uniform(m + 1e-4, 0.99))
        eps = float(rng.uniform(0.0, mu - m))
        k_mu = kinf(dist, mu).value
        k_lo = kinf(dist, mu - eps).value if mu - eps > 0 else 0.0
        worst_lower = max(worst_lower, k_lo + 2.0 * eps * eps - k_mu)
        worst_upper = max(worst_upper, k_mu - (k_lo + eps / (1.0 - mu)))
    points = [
        _point("lower: kinf(mu-eps) + 2 eps^2 <= kinf(mu)", worst_lower, tol),
        _point("upper: kinf(mu) <= kinf(mu-eps) + eps/(1-mu)", worst_upper, tol),
    ]
    return BoundCheckReport("kinf-regularity", points, samples)


# ---------------------------------------------------------------------------
# deviation / concentration checkers


def _finite_support(arm):
    """(values, probs) when the arm has finite support, else None."""
    if isinstance(arm, Bernoulli):
        return np.array([0.0, 1.0]), np.array([1.0 - arm.p, arm.p])
    if isinstance(arm, Dirac):
        return np.array([arm.value]), np.array([1.0])
    if isinstance(arm, Discrete):
        return np.asarray(arm.values, dtype=float), np.asarray(arm.probs, dtype=float)
    return None


def _binary_kinf_table(n: int, mu: float) -> np.ndarray:
    """kinf(empirical of c ones out of n, mu) for every count c."""
    vals = np.empty(n + 1)
    for c in range(n + 1):
        if c == 0:
            dist = EmpiricalDistribution([0.0], [n])
        elif c == n:
            dist = EmpiricalDistribution([1.0], [n])
        else:
            dist = EmpiricalDistribution([0.0, 1.0], [n - c, c])
        vals[c] = kinf(dist, mu).value
    return vals


def _resampled_kinf(arm, n: int, mu: float, runs: int, rng: np.random.Generator) -> np.ndarray:
    """kinf(empirical of n i.i.d. draws, mu), resampled ``runs`` times."""
    if arm.support_binary:
        counts = rng.binomial(n, arm.true_mean(), size=runs)
        return _binary_kinf_table(n, mu)[counts]
    vals = np.empty(runs)
    for i in range(runs):
        xs = np.asarray(arm.quantile(rng.random(n)), dtype=float)
        vals[i] = kinf(EmpiricalDistribution.from_observations(xs), mu).value
    return vals


def kinf_deviation_check(arm, n: int, u_grid, runs: int, seed: int) -> BoundCheckReport:
    """P[kinf(empirical_n, E(nu)) >= u] <= e (2n+1) e^(-n u)."""
    mu = arm.true_mean()
    if not 0.0 < mu < 1.0:
        raise ValueError("the arm mean must lie strictly inside (0, 1)")
    rng = np.random.default_rng(seed)
    vals = _resampled_kinf(arm, n, mu, runs, rng)
    points = []
    for u in u_grid:
        freq = float(np.mean(vals >= u))
        se = math.sqrt(freq * (1.0 - freq) / runs)
        bound = math.e * (2 * n + 1) * math.exp(-n * u)
        points.append(_point(f"n={n},u={u:g}", freq, bound, se))
    return BoundCheckReport(f"kinf-deviation[{arm.kind},n={n}]", points, runs)


def kinf_integrated_deviation_check(arm, n: int, eps_grid, runs: int, seed: int) -> BoundCheckReport:
    """E[(E(nu) - U_eps,n)+] <= (2n+1) e^(-n eps) sqrt(pi/n), where U_eps,n
    is the index inversion at budget eps on the resampled empirical."""
    mu = arm.true_mean()
    if not 0.0 < mu < 1.0:
        raise ValueError("the arm mean must lie strictly inside (0, 1)")
    if not arm.support_binary:
        raise ValueError("integrated deviation checker supports binary arms only")
    rng = np.random.default_rng(seed)
    counts = rng.binomial(n, mu, size=runs)
    points = []
    for eps in eps_grid:
        table = np.empty(n + 1)
        for c in range(n + 1):
            if c == 0:
                dist = EmpiricalDistribution([0.0], [n])
            elif c == n:
                dist = EmpiricalDistribution([1.0], [n])
            else:
                dist = EmpiricalDistribution([0.0, 1.0], [n - c, c])
            table[c] = klucb_index(dist, float(eps))
        shortfall = np.maximum(mu - table[counts], 0.0)
        emp = float(shortfall.mean())
        se = float(shortfall.std(ddof=1) / math.sqrt(runs))
        bound = (2 * n + 1) * math.exp(-n * eps) * math.sqrt(math.pi / n)
        points.append(_point(f"n={n},eps={eps:g}", emp, bound, se))
    return BoundCheckReport(f"kinf-integrated-deviation[{arm.kind},n={n}]", points, runs)


def kinf_concentration_check(arm, mu: float, n_grid, runs: int, seed: int, x_fracs=None) -> BoundCheckReport:
    """Two-regime lower-tail bound on kinf(empirical_n, mu) below the
    population value, with the variance proxy gamma(mu)."""
    support = _finite_support(arm)
    if support is None:
        raise ValueError("concentration checker needs a finite-support arm")
    m = arm.true_mean()
    if not m < mu < 1.0:
        raise ValueError("mu must exceed the arm mean and stay below 1")
    k_true = kinf_weighted(support[0], support[1], mu).value
    gamma = concentration_gamma(mu)
    x_fracs = x_fracs if x_fracs is not None else np.linspace(0.0, 0.9, 10)
    rng = np.random.default_rng(seed)
    points = []
    for n in n_grid:
        vals = _resampled_kinf(arm, int(n), mu, runs, rng)
        for frac in x_fracs:
            x = frac * k_true
            freq = float(np.mean(vals <= x))
            se = math.sqrt(freq * (1.0 - freq) / runs)
            if x <= k_true - gamma / 2.0:
                bound = math.exp(-n * gamma / 8.0)
            else:
                bound = math.exp(-n * (k_true - x) ** 2 / (2.0 * gamma))
            points.append(_point(f"n={n},x={x:.4f}", freq, bound, se))
    return BoundCheckReport(
        f"kinf-concentration[{arm.kind},mu={mu}]",
        points,
        runs,
        notes=f"k_true={k_true:.6f}, gamma={gamma:.6f}",
        values={"k_true": k_true, "gamma": gamma},
    )


def gamma_floor_check(mu_grid=None) -> BoundCheckReport:
    """gamma(mu) >= 2 for all mu, hence exp(-n gamma/8) <= exp(-n/4)."""
    mu_grid = mu_grid if mu_grid is not None else np.linspace(0.01, 0.99, 99)
    points = []
    for mu in mu_grid:
        g = concentration_gamma(float(mu))
        points.append(_point(f"mu={mu:.2f}: require gamma >= 2", 2.0, g))
    return BoundCheckReport("concentration-gamma-floor", points, 0, notes="analytic, no sampling")


def _max_deviation_stream(arm, n_start: int, cap: int, runs: int, rng, sign: float) -> np.ndarray:
    """Per run, max over n in [n_start, cap] of sign*(mean_n - mu)."""
    mu = arm.true_mean()
    out = np.empty(runs)
    done = 0
    chunk = max(1, min(runs, 4_000_000 // cap))
    while done < runs:
        r = min(chunk, runs - done)
        draws = np.asarray(arm.quantile(rng.random((r, cap))), dtype=float)
        cum = np.cumsum(draws, axis=1) / np.arange(1, cap + 1)
        dev = sign * (cum[:, n_start - 1 :] - mu)
        out[done : done + r] = dev.max(axis=1)
        done += r
    return out


def hoeffding_max_check(arm, n_start: int, u_grid, runs: int, seed: int, cap_factor: int = 50) -> BoundCheckReport:
    """Maximal Hoeffding: P[max_{n>=N} (mean_n - mu) >= u] <= e^(-2 N u^2).

    The maximum is truncated to n in [N, 50N]; the truncated event is a
    subset of the untruncated one, so the check stays conservative-valid.
    """
    rng = np.random.default_rng(seed)
    mx = _max_deviation_stream(arm, n_start, cap_factor * n_start, runs, rng, sign=1.0)
    points = []
    for u in u_grid:
        freq = float(np.mean(mx >= u))
        se = math.sqrt(freq * (1.0 - freq) / runs)
        bound = math.exp(-2.0 * n_start * u * u)
        points.append(_point(f"N={n_start},u={u:g}", freq, bound, se))
    return BoundCheckReport(
        f"hoeffding-max[{arm.kind},N={n_start}]",
        points,
        runs,
        notes=f"maximum truncated to n in [N, {cap_factor}N]",
    )


def hoeffding_integrated_check(arm, n_start: int, eps_grid, runs: int, seed: int, cap_factor: int = 50) -> BoundCheckReport:
    """Integrated form: E[(max_{n>=N} (mu - mean_n - eps))+]
    <= sqrt(pi/8) sqrt(1/N) e^(-2 N eps^2)."""
    rng = np.random.default_rng(seed)
    mx = _max_deviation_stream(arm, n_start, cap_factor * n_start, runs, rng, sign=-1.0)
    points = []
    for eps in eps_grid:
        vals = np.maximum(mx - eps, 0.0)
        emp = float(vals.mean())
        se = float(vals.std(ddof=1) / math.sqrt(runs))
        bound = math.sqrt(math.pi / 8.0) * math.sqrt(1.0 / n_start) * math.exp(-2.0 * n_start * eps * eps)
        points.append(_point(f"N={n_start},eps={eps:g}", emp, bound, se))
    return BoundCheckReport(f"hoeffding-integrated[{arm.kind},N={n_start}]", points, runs)


# ---------------------------------------------------------------------------
# index ordering


def index_ordering_check(
    runs: int = 100,
    checkpoints_per_run: int = 10,
    horizon: int = 600,
    seed: int = 20_240_103,
    tol: float = 1e-9,
) -> BoundCheckReport:
    """Pinsker sandwich of indices on shared states: the empirical-
    likelihood index never exceeds the switch index, which never exceeds
    the minimax index, for the known-horizon trio and the anytime trio.

    States are produced by anytime-switch runs (simulated vectorised,
    replayed here), sampled at log-spaced steps.
    """
    bandit = BanditInstance((Bernoulli(0.8), Bernoulli(0.6), Bernoulli(0.4)))
    k = bandit.k
    driver = PolicySpec("klucb-switch-anytime", switch_exponent=8.0 / 9.0)
    kl_t = PolicySpec("klucb", horizon=horizon)
    moss_t = PolicySpec("moss", horizon=horizon)
    sw_t = PolicySpec("klucb-switch", horizon=horizon)
    kl_a = PolicySpec("klucb-anytime")
    moss_a = PolicySpec("moss-anytime")
    sw_a = PolicySpec("klucb-switch-anytime")

    seeds = [run_seed(seed, 0, r) for r in range(runs)]
    _, actions = _vector.simulate(bandit, driver, horizon, seeds, (horizon,), record_actions=True)
    sample_steps = np.unique(np.geomspace(k + 1, horizon, checkpoints_per_run).astype(int))

    worst_known = -math.inf
    worst_anytime = -math.inf
    checked = 0
    for r in range(runs):
        key = mix64(seeds[r])
        state = PolicyState.fresh(k)
        targets = set(int(s) for s in sample_steps)
        for step in range(1, horizon + 1):
            a = int(actions[r, step - 1])
            reward = float(bandit.arms[a].quantile(unit_uniform(key, step, CH_REWARD)))
            update(state, a, reward)
            if step in targets:
                for arm in range(k):
                    u_kl = compute_index(kl_t, state, arm)
                    u_m = compute_index(moss_t, state, arm)
                    u_sw = compute_index(sw_t, state, arm)
                    worst_known = max(worst_known, u_kl - u_sw, u_sw - u_m)
                    u_kla = compute_index(kl_a, state, arm)
                    u_ma = compute_index(moss_a, state, arm)
                    u_swa = compute_index(sw_a, state, arm)
                    worst_anytime = max(worst_anytime, u_kla - u_swa, u_swa - u_ma)
                checked += 1
    points = [
        _point("known-horizon: max(U_kl - U_switch, U_switch - U_moss)", worst_known, tol),
        _point("anytime: max(U_kl_a - U_switch_a, U_switch_a - U_moss_a)", worst_anytime, tol),
    ]
    return BoundCheckReport(
        "index-pinsker-ordering",
        points,
        runs,
        notes=f"{checked} sampled (state, step) checkpoints, all arms",
        values={"checkpoints": checked},
    )


# ---------------------------------------------------------------------------
# Lambert W


def lambert_residual_check(grid=None, rel_tol: float = 1e-10) -> BoundCheckReport:
    """Defining-equation residual on a log grid, plus the sandwich
    ln x - ln ln x <= W(x) <= ln x - ln ln x + ln(1 + 1/e) for x > e."""
    grid = grid if grid is not None else np.geomspace(1e-3, 1e9, 61)
    points = []
    for x in grid:
        x = float(x)
        w = lambert_w(x)
        resid = abs(w * math.exp(w) - x) / x
        points.append(_point(f"x={x:.3g}: residual", resid, rel_tol))
        if x > math.e:
            lo = math.log(x) - math.log(math.log(x))
            hi = lo + math.log(1.0 + math.exp(-1.0))
            points.append(_band_point(f"x={x:.3g}: sandwich", w, lo, hi))
    return BoundCheckReport("lambert-w", points, 0, notes="analytic, no sampling")


# ---------------------------------------------------------------------------
# regret-level checks (Monte Carlo)


def distribution_free_check(
    runs: int = 1000,
    horizon: int = 10_000,
    seed: int = 20_240_201,
    parallelism: int = 1,
) -> BoundCheckReport:
    """Worst-case-style scenario at gap sqrt(K/T): mean regret under the
    closed-form distribution-free constants, and the normalized regret of
    the known-horizon switch policy below 5."""
    k = 2
    gap = math.sqrt(k / horizon)
    bandit = BanditInstance((Bernoulli(0.8), Bernoulli(0.8 - gap)))
    specs = (
        PolicySpec("klucb-switch", horizon=horizon, label="switch-known-T"),
        PolicySpec("moss", horizon=horizon, label="moss"),
        PolicySpec("klucb-switch-anytime", exploration="augmented_phi", label="switch-anytime"),
    )
    scenario = Scenario(bandit=bandit, horizon=horizon, policies=specs, runs=runs, base_seed=seed)
    curve = monte_carlo(scenario, parallelism=parallelism)
    root = math.sqrt(k * horizon)
    points = []
    values = {}
    for label, bound_id in (
        ("switch-known-T", "switch-known-horizon"),
        ("moss", "moss"),
        ("switch-anytime", "switch-anytime"),
    ):
        mean_rt = curve.final_mean(label)
        se = curve.final_stderr(label)
        values[label] = mean_rt
        points.append(_point(f"{label}: R_T vs {bound_id}", mean_rt, theoretical_bounds(k, horizon, bound_id), se))
    norm = curve.final_mean("switch-known-T") / root
    values["normalized-switch-known-T"] = norm
    points.append(_point("switch-known-T: R_T/sqrt(KT) < 5", norm, 5.0, curve.final_stderr("switch-known-T") / root))
    return BoundCheckReport("regret-distribution-free", points, runs, values=values)


def distribution_dependent_check(
    runs: int = 2000,
    horizon: int = 10_000,
    seed: int = 20_240_202,
    parallelism: int = 1,
) -> BoundCheckReport:
    """Two-armed Bernoulli (0.9, 0.8): logarithmic regret growth of the
    known-horizon switch and moss policies within a [0.5, 3] band of the
    information-theoretic rate gap/kl(0.8, 0.9) * ln T, and the regret
    ordering klucb <~ switch <~ moss at the horizon.

    Pure klucb is kept out of the band assertion: its measured regret at
    this horizon sits *below* half the asymptotic rate (the second-order
    -ln ln T effect), which is a feature of the policy, not a bug."""
    bandit = BanditInstance((Bernoulli(0.9), Bernoulli(0.8)))
    specs = (
        PolicySpec("klucb", horizon=horizon, label="klucb"),
        PolicySpec("klucb-switch", horizon=horizon, label="switch"),
        PolicySpec("moss", horizon=horizon, label="moss"),
    )
    scenario = Scenario(bandit=bandit, horizon=horizon, policies=specs, runs=runs, base_seed=seed)
    curve = monte_carlo(scenario, parallelism=parallelism)
    rate = (0.1 / bernoulli_kl(0.8, 0.9)) * math.log(horizon)
    points = []
    values = {"rate": rate, "klucb": curve.final_mean("klucb")}
    for label in ("switch", "moss"):
        mean_rt = curve.final_mean(label)
        se = curve.final_stderr(label)
        values[label] = mean_rt
        points.append(_band_point(f"{label}: R_T vs log-rate band", mean_rt, 0.5 * rate, 3.0 * rate, se))
    se_pair = curve.final_stderr("klucb") + curve.final_stderr("switch")
    points.append(
        _point("ordering: R(klucb) <= R(switch) + 3 se", curve.final_mean("klucb"), curve.final_mean("switch"), se_pair)
    )
    se_pair = curve.final_stderr("switch") + curve.final_stderr("moss")
    points.append(
        _point("ordering: R(switch) <= R(moss) + 3 se", curve.final_mean("switch"), curve.final_mean("moss"), se_pair)
    )
    return BoundCheckReport("regret-distribution-dependent", points, runs, values=values)


def minimax_profile_check(
    runs: int = 5000,
    horizon: int = 10_000,
    x: float = 1.0,
    ks=(2, 10, 50),
    seed: int = 20_240_203,
    parallelism: int = 1,
) -> BoundCheckReport:
    """Normalized regret across K at fixed gap parameter x: the anytime
    switch policy stays within a factor 2, while ucb grows with K."""
    norm = {}
    err = {}
    for k in ks:
        gap = x * math.sqrt(k / horizon)
        arms = (Bernoulli(0.8),) + tuple(Bernoulli(0.8 - gap) for _ in range(k - 1))
        bandit = BanditInstance(arms)
        specs = (
            PolicySpec("klucb-switch-anytime", switch_exponent=8.0 / 9.0, label="switch"),
            PolicySpec("ucb", label="ucb"),
        )
        scenario = Scenario(bandit=bandit, horizon=horizon, policies=specs, runs=runs, base_seed=seed)
        curve = monte_carlo(scenario, parallelism=parallelism)
        root = math.sqrt(k * horizon)
        for label in ("switch", "ucb"):
            norm[(label, k)] = curve.final_mean(label) / root
            err[(label, k)] = curve.final_stderr(label) / root
    points = []
    sw = [norm[("switch", k)] for k in ks]
    ratio = max(sw) / min(sw)
    points.append(_point(f"switch: max/min normalized regret over K={list(ks)}", ratio, 2.0))
    for k_lo, k_hi in zip(ks[:-1], ks[1:]):
        diff = norm[("ucb", k_lo)] - norm[("ucb", k_hi)]
        se = err[("ucb", k_lo)] + err[("ucb", k_hi)]
        points.append(_point(f"ucb: normalized regret grows K={k_lo}->{k_hi}", diff, 0.0, se))
    values = {f"{label}-K{k}": v for (label, k), v in norm.items()}
    values["switch-ratio"] = ratio
    return BoundCheckReport("regret-minimax-profile", points, runs, values=values)


# ---------------------------------------------------------------------------
# suites


SUITES = (
    "kinf-oracle",
    "deviation",
    "concentration",
    "hoeffding",
    "ordering",
    "lambert",
    "regret-bounds",
    "all",
)

_U_GRID = tuple(round(0.05 * i, 2) for i in range(1, 21))


def run_suite(name: str, runs: int | None = None, parallelism: int = 1) -> list:
    """Run one named verification suite; returns its reports."""
    if name == "kinf-oracle":
        return [
            kinf_grid_oracle_check(n_dists=runs or 500),
            bernoulli_identity_check(),
            regularity_check(samples=runs * 20 if runs else 10_000),
        ]
    if name == "deviation":
        n_runs = runs or 100_000
        reports = []
        for p in (0.3, 0.5):
            for n in (10, 50):
                reports.append(kinf_deviation_check(Bernoulli(p), n, _U_GRID, n_runs, seed=91_000 + n))
        for n in (5, 20):
            reports.append(
                kinf_integrated_deviation_check(Bernoulli(0.5), n, (0.05, 0.2), min(n_runs, 10_000), seed=92_000 + n)
            )
        return reports
    if name == "concentration":
        n_runs = runs or 100_000
        return [
            kinf_concentration_check(Bernoulli(0.2), 0.5, (20, 100), n_runs, seed=93_000),
            gamma_floor_check(),
        ]
    if name == "hoeffding":
        n_runs = runs or 10_000
        return [
            hoeffding_max_check(Bernoulli(0.5), 20, (0.05, 0.1, 0.2, 0.3, 0.4), n_runs, seed=94_000),
            hoeffding_integrated_check(Bernoulli(0.5), 20, (0.0, 0.05, 0.1), n_runs, seed=94_001),
        ]
    if name == "ordering":
        return [index_ordering_check(runs=runs or 100)]
    if name == "lambert":
        return [lambert_residual_check()]
    if name == "regret-bounds":
        return [
            distribution_free_check(runs=runs or 1000, parallelism=parallelism),
            distribution_dependent_check(runs=runs or 2000, parallelism=parallelism),
            minimax_profile_check(runs=runs or 5000, parallelism=parallelism),
        ]
    if name == "all":
        reports = []
        for sub in SUITES[:-1]:
            reports.extend(run_suite(sub, runs=runs, parallelism=parallelism))
        return reports
    raise ValueError(f"unknown suite {name!r}; known: {SUITES}")
