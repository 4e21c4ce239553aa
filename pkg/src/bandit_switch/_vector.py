"""Vectorised multi-run simulation engine.

Simulates a batch of independent runs of one policy simultaneously, with
state arrays of shape (runs, arms).  Because rewards and tie-breaks come
from the counter-based hash in :mod:`._rng`, each run's trajectory is the
same whether it is simulated here, in another batch split, or one run at a
time by the scalar reference engine in :mod:`.simulator`.

The engine is available when per-arm (count, mean) statistics determine
the policy's index (ucb, moss families, parametric comparators), or, for
the empirical-likelihood families, when every arm is supported on {0, 1}
so that the empirical distribution reduces to its mean.  In that reduction
the divergence is the Bernoulli KL, inverted by a guarded Newton iteration
in the variable y = -ln(1 - mu), where the problem is concave and
well-conditioned all the way to mu -> 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import CH_REWARD, CH_TIE, mix64_array, unit_uniform_array
from .distributions import BanditInstance, Bernoulli, Dirac
from .policies import PolicySpec, switch_value

_MEAN_BASED = {"ucb", "moss", "moss-anytime", "klucb-gauss", "klucb-exp"}
_KL_FAMILIES = {"klucb", "klucb-anytime", "klucb-switch", "klucb-switch-anytime", "imed"}


def supports(bandit: BanditInstance, spec: PolicySpec) -> bool:
    """Whether this engine can simulate (bandit, spec) exactly."""
    if spec.family in _MEAN_BASED:
        return True
    return all(arm.support_binary for arm in bandit.arms)


def _explo_vec(kind: str, x: np.ndarray) -> np.ndarray:
    lp = np.log(np.maximum(x, 1.0))
    if kind == "augmented_phi":
        return np.log(np.maximum(x * (1.0 + lp * lp), 1.0))
    return lp


def bern_klucb(p: np.ndarray, d: np.ndarray, iters: int = 40) -> np.ndarray:
    """Elementwise sup { mu : kl(p, mu) <= d } for Bernoulli KL.

    Newton in y = -ln(1 - mu), where the objective
    h(y) = kl(p, mu(y)) - d is increasing and convex with the simple
    derivative h'(y) = (mu - p)/mu.  The start
    y0 = (d - p ln p - q ln q)/q sits at or above the root (it solves the
    relaxation that drops the -p ln(mu) <= 0 term), so the iteration
    decreases monotonically and converges quadratically.
    """
    out = p.copy()
    act = d > 0.0
    if not act.any():
        return out
    ones = act & (p >= 1.0)
    out[ones] = 1.0
    zeros = act & (p <= 0.0)
    if zeros.any():
        out[zeros] = -np.expm1(-d[zeros])
    gen = act & (p > 0.0) & (p < 1.0)
    if gen.any():
        pg = p[gen]
        dg = d[gen]
        qg = 1.0 - pg
        lp = np.log(pg)
        lq = np.log(qg)
        y = (dg - pg * lp - qg * lq) / qg
        for _ in range(iters):
            mu = 1.0 - np.exp(-y)
            h = pg * (lp - np.log(mu)) + qg * lq + qg * y - dg
            hp = (mu - pg) / mu
            step = h / np.maximum(hp, 1e-300)
            y = y - step
            if np.max(np.abs(step)) < 1e-13:
                break
        out[gen] = 1.0 - np.exp(-y)
    return out


def exp_klucb(h: np.ndarray, d: np.ndarray, iters: int = 30) -> np.ndarray:
    """Elementwise largest m with h/m - 1 + ln(m/h) <= d, clamped to [0,1].

    Newton in u = ln(m/h) on the convex increasing map e^-u - 1 + u - d,
    started from u0 = 1 + d (above the root), hence monotone decreasing.
    """
    u = np.full_like(h, 1.0)
    u += d
    act = d > 0.0
    for _ in range(iters):
        eu = np.exp(-u)
        g = eu - 1.0 + u - d
        gp = 1.0 - eu
        step = np.where(act & (gp > 0.0), g / np.maximum(gp, 1e-300), 0.0)
        u = u - step
        if np.max(np.abs(step)) < 1e-13:
            break
    m = h * np.exp(np.where(act, u, 0.0))
    return np.minimum(m, 1.0)


def _bern_kl_vec(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    # kl(p, q) with q strictly interior; p may hit 0 or 1.
    with np.errstate(divide="ignore", invalid="ignore"):
        t1 = np.where(p > 0.0, p * np.log(p / q), 0.0)
        t2 = np.where(p < 1.0, (1.0 - p) * np.log((1.0 - p) / (1.0 - q)), 0.0)
    return t1 + t2


@dataclass
class _Ctx:
    spec: PolicySpec
    k: int
    arms: tuple
    bern_p: np.ndarray | None
    dirac_v: np.ndarray | None


def _make_ctx(bandit: BanditInstance, spec: PolicySpec) -> _Ctx:
    arms = bandit.arms
    bern_p = None
    dirac_v = None
    if all(isinstance(a, Bernoulli) for a in arms):
        bern_p = np.array([a.p for a in arms])
    elif all(isinstance(a, Dirac) for a in arms):
        dirac_v = np.array([a.value for a in arms])
    return _Ctx(spec=spec, k=bandit.k, arms=arms, bern_p=bern_p, dirac_v=dirac_v)


def _draw(ctx: _Ctx, action: np.ndarray, u: np.ndarray) -> np.ndarray:
    if ctx.bern_p is not None:
        return np.where(u < ctx.bern_p[action], 1.0, 0.0)
    if ctx.dirac_v is not None:
        return ctx.dirac_v[action]
    r = np.empty(action.shape)
    for a, arm in enumerate(ctx.arms):
        mask = action == a
        if mask.any():
            r[mask] = arm.quantile(u[mask])
    return r


def _tie_break(scores: np.ndarray, u: np.ndarray, minimize: bool) -> np.ndarray:
    if minimize:
        scores = -scores
    best = scores.max(axis=1)
    is_best = scores == best[:, None]
    n_tie = is_best.sum(axis=1)
    pick = (u * n_tie).astype(np.int64)
    csum = np.cumsum(is_best, axis=1)
    return np.argmax(csum > pick[:, None], axis=1)


def _indices(ctx: _Ctx, n: np.ndarray, s: np.ndarray, t: int) -> np.ndarray:
    spec = ctx.spec
    fam = spec.family
    k = ctx.k
    mean = s / n

    if fam == "ucb":
        c = 2.0 * math.log(t) if spec.ucb_classic else math.log(t) / 2.0
        return mean + np.sqrt(c / n)
    if fam in ("moss", "moss-anytime"):
        ratio = (spec.horizon if fam == "moss" else t) / k
        return mean + np.sqrt(_explo_vec(spec.exploration, ratio / n) / (2.0 * n))
    if fam == "klucb-gauss":
        ref = spec.horizon if spec.horizon is not None else t
        return mean + np.sqrt(2.0 * spec.sigma**2 * _explo_vec(spec.exploration, ref / (k * n)) / n)
    if fam == "klucb-exp":
        ref = spec.horizon if spec.horizon is not None else t
        d = _explo_vec(spec.exploration, ref / (k * n)) / n
        return exp_klucb(np.maximum(mean, 1e-12), d)
    if fam in ("klucb", "klucb-anytime"):
        ref = spec.horizon if fam == "klucb" else t
        d = _explo_vec(spec.exploration, ref / (k * n)) / n
        return bern_klucb(mean, d)
    if fam in ("klucb-switch", "klucb-switch-anytime"):
        ref = spec.horizon if fam == "klucb-switch" else t
        ratio = ref / k
        out = mean + np.sqrt(_explo_vec(spec.exploration, ratio / n) / (2.0 * n))
        f = switch_value(ref, k, spec.switch_exponent)
        kl_branch = n <= f
        if kl_branch.any():
            n_c = n[kl_branch]
            d_c = _explo_vec(spec.exploration, ratio / n_c) / n_c
            out[kl_branch] = bern_klucb(mean[kl_branch], d_c)
        return out
    if fam == "imed":
        pmax = np.clip(mean.max(axis=1), 1e-9, 1.0 - 1e-9)[:, None]
        kl = np.where(mean >= pmax, 0.0, _bern_kl_vec(mean, pmax))
        return n * kl + np.log(n)
    raise AssertionError(f"unhandled family {fam!r}")


def simulate(
    bandit: BanditInstance,
    spec: PolicySpec,
    horizon: int,
    seeds,
    record_grid,
    record_actions: bool = False,
):
    """Simulate one run per seed; return pseudo-regret at the recorded
    steps as a (runs, grid) array, plus the action log when asked."""
    k = bandit.k
    runs = len(seeds)
    keys = mix64_array(np.asarray(seeds, dtype=np.uint64))
    ctx = _make_ctx(bandit, spec)
    gaps = bandit.gaps
    minimize = spec.family == "imed"

    n = np.zeros((runs, k))
    s = np.zeros((runs, k))
    regret = np.zeros(runs)
    gpos = np.full(horizon + 1, -1, dtype=np.int64)
    for g, step in enumerate(record_grid):
        gpos[step] = g
    out = np.empty((runs, len(record_grid)))
    actions = np.empty((runs, horizon), dtype=np.int32) if record_actions else None
    rows = np.arange(runs)

    for step in range(1, k + 1):
        a = step - 1
        u = unit_uniform_array(keys, step, CH_REWARD)
        r = np.asarray(bandit.arms[a].quantile(u), dtype=float)
        n[:, a] += 1.0
        s[:, a] += r
        regret += gaps[a]
        if actions is not None:
            actions[:, step - 1] = a
        if gpos[step] >= 0:
            out[:, gpos[step]] = regret

    for step in range(k + 1, horizon + 1):
        t = step - 1
        scores = _indices(ctx, n, s, t)
        u_tie = unit_uniform_array(keys, step, CH_TIE)
        action = _tie_break(scores, u_tie, minimize)
        u = unit_uniform_array(keys, step, CH_REWARD)
        r = _draw(ctx, action, u)
        s[rows, action] += r
        n[rows, action] += 1.0
        regret += gaps[action]
        if actions is not None:
            actions[:, step - 1] = action
        if gpos[step] >= 0:
            out[:, gpos[step]] = regret

    if record_actions:
        return out, actions
    return out
