"""Index policies for bounded bandits.

Families
--------
- ``ucb``: empirical mean plus sqrt(ln t / (2 N)); the classical
  sqrt(2 ln t / N) bonus is available behind ``ucb_classic``.
- ``moss`` / ``moss-anytime``: mean plus
  sqrt(explo(ratio / N) / (2 N)) with ratio = T/K, resp. t/K.
- ``klucb`` / ``klucb-anytime``: empirical-likelihood upper-confidence
  mean at budget explo(ratio / N) / N.
- ``klucb-switch`` / ``klucb-switch-anytime``: the klucb index while an
  arm's pull count is below the switch threshold, the moss index after.
  The anytime switch is re-evaluated every step, so an arm may switch
  back and forth.
- ``imed``: N * kinf(dist, max empirical mean) + ln N, *minimised*.
- ``klucb-exp`` / ``klucb-gauss``: parametric comparators driven by the
  exponential, resp. Gaussian, KL on means.

The exploration function is a configuration axis: ``log_plus`` is the
plain positive-part logarithm, ``augmented_phi`` the inflated variant
x -> ln_+(x (1 + ln_+^2 x)) used by the theoretical anytime indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import EmpiricalDistribution
from .kinf import exp_kl_index, kinf, klucb_index

__all__ = [
    "FAMILIES",
    "EXPLORATIONS",
    "PolicySpec",
    "PolicyState",
    "log_plus",
    "phi",
    "moss_index",
    "switch_threshold",
    "switch_value",
    "compute_index",
    "select_arm",
    "update",
]

FAMILIES = (
    "ucb",
    "moss",
    "moss-anytime",
    "klucb",
    "klucb-anytime",
    "klucb-switch",
    "klucb-switch-anytime",
    "imed",
    "klucb-exp",
    "klucb-gauss",
)

EXPLORATIONS = ("log_plus", "augmented_phi", "log_t")

_NEEDS_HORIZON = {"moss", "klucb", "klucb-switch"}
_SWITCH = {"klucb-switch", "klucb-switch-anytime"}
_NEEDS_DISTS = {"klucb", "klucb-anytime", "klucb-switch", "klucb-switch-anytime", "imed"}

_EMPIRICAL_EXPONENT = 8.0 / 9.0


def log_plus(x: float) -> float:
    """Positive part of the natural logarithm."""
    if x <= 0.0:
        raise ValueError("log_plus requires a positive argument")
    return max(math.log(x), 0.0)


def phi(x: float) -> float:
    """Augmented exploration x -> ln_+(x (1 + ln_+^2 x)); non-decreasing,
    and never below ln_+."""
    if x <= 0.0:
        raise ValueError("phi requires a positive argument")
    lp = log_plus(x)
    return log_plus(x * (1.0 + lp * lp))


def _explo(kind: str, x: float) -> float:
    if kind == "augmented_phi":
        return phi(x)
    return log_plus(x)


def switch_value(tau: float, k: int, exponent: float = 0.2) -> float:
    """Switch threshold as a real number, used by the branch test.

    Two conventions, matching how each variant is defined: the exponent
    8/9 floors the ratio before exponentiation (empirical variant), any
    other exponent floors the power (theoretical variant, where the
    threshold is an integer by definition).
    """
    if tau < 1 or k < 1:
        raise ValueError("tau and k must be >= 1")
    if abs(exponent - _EMPIRICAL_EXPONENT) < 1e-12:
        return math.floor(tau / k) ** exponent
    return float(math.floor((tau / k) ** exponent))


def switch_threshold(tau: int, k: int, exponent: float = 0.2) -> int:
    """Integer switch threshold (the real value of :func:`switch_value`,
    floored for display)."""
    return int(math.floor(switch_value(tau, k, exponent)))


def moss_index(mean: float, n: int, ratio: float, explo: str = "log_plus") -> float:
    """mean + sqrt(explo(ratio / n) / (2 n)), the minimax bonus template."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return mean + math.sqrt(_explo(explo, ratio / n) / (2.0 * n))


@dataclass(frozen=True)
class PolicySpec:
    """Configuration of one index policy.

    ``horizon`` is required for the non-anytime families (moss, klucb,
    klucb-switch) and ignored by the others except klucb-exp/klucb-gauss,
    which use the horizon ratio when it is set and the running time ratio
    otherwise.
    """

    family: str
    horizon: Optional[int] = None
    exploration: str = "log_plus"
    switch_exponent: float = 0.2
    sigma: float = 0.1
    ucb_classic: bool = False
    label: Optional[str] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown policy family {self.family!r}")
        if self.family == "ucb":
            object.__setattr__(self, "exploration", "log_t")
        elif self.exploration == "log_t":
            raise ValueError("log_t exploration is specific to the ucb family")
        elif self.exploration not in EXPLORATIONS:
            raise ValueError(f"unknown exploration {self.exploration!r}")
        if self.family in _NEEDS_HORIZON and self.horizon is None:
            raise ValueError(f"family {self.family!r} requires a horizon")
        if self.horizon is not None and self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.family in _SWITCH and not 0.0 < self.switch_exponent < 1.0:
            raise ValueError("switch exponent must lie in (0, 1)")
        if self.family == "klucb-gauss" and self.sigma <= 0.0:
            raise ValueError("sigma must be positive")

    @property
    def name(self) -> str:
        return self.label if self.label is not None else self.family

    @property
    def needs_distributions(self) -> bool:
        return self.family in _NEEDS_DISTS

    def to_config(self) -> dict:
        cfg: dict = {"family": self.family}
        if self.horizon is not None:
            cfg["horizon"] = self.horizon
        if self.family != "ucb":
            cfg["exploration"] = self.exploration
        if self.family in _SWITCH:
            cfg["switch_exponent"] = self.switch_exponent
        if self.family == "klucb-gauss":
            cfg["sigma"] = self.sigma
        if self.family == "ucb" and self.ucb_classic:
            cfg["ucb_classic"] = True
        if self.label is not None:
            cfg["label"] = self.label
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "PolicySpec":
        if not isinstance(cfg, dict) or "family" not in cfg:
            raise ValueError(f"policy config must be a dict with a 'family' key, got {cfg!r}")
        allowed = {"family", "horizon", "exploration", "switch_exponent", "sigma", "ucb_classic", "label"}
        extra = set(cfg) - allowed
        if extra:
            raise ValueError(f"unknown keys {sorted(extra)} in policy config")
        return cls(**cfg)


@dataclass
class PolicyState:
    """Per-run sufficient statistics: pull counts, reward sums, empirical
    distributions, and the global step counter.  Owned by a single run."""

    k: int
    counts: list
    sums: list
    dists: list
    t: int = 0
    rng: Optional[np.random.Generator] = None

    @classmethod
    def fresh(cls, k: int, *, bins: int | None = None, rng: Optional[np.random.Generator] = None) -> "PolicyState":
        if k < 1:
            raise ValueError("need at least one arm")
        return cls(
            k=k,
            counts=[0] * k,
            sums=[0.0] * k,
            dists=[EmpiricalDistribution(bins=bins) for _ in range(k)],
            t=0,
            rng=rng,
        )

    def mean(self, arm: int) -> float:
        if self.counts[arm] == 0:
            raise ValueError(f"arm {arm} has not been pulled yet")
        return self.sums[arm] / self.counts[arm]


def update(state: PolicyState, arm: int, reward: float) -> PolicyState:
    """Record one observation; mutates and returns ``state``.

    Counts and sums always accumulate the exact reward.  When the state's
    distributions were built with ``bins``, only the atom entering the
    empirical distribution is rounded (that accumulator is the divergence
    solver's cost center); the binned mean then deviates from the exact
    one by at most 1/(2 bins).
    """
    if not 0.0 <= reward <= 1.0:
        raise ValueError(f"reward {reward!r} outside [0, 1]")
    state.counts[arm] += 1
    state.sums[arm] += reward
    state.dists[arm]._push(reward)
    state.t += 1
    return state


def _imed_score(state: PolicyState, arm: int) -> float:
    mu_max = max(state.sums[a] / state.counts[a] for a in range(state.k))
    mu_max = min(max(mu_max, 1e-9), 1.0 - 1e-9)
    n = state.counts[arm]
    return n * kinf(state.dists[arm], mu_max).value + math.log(n)


def compute_index(spec: PolicySpec, state: PolicyState, arm: int) -> float:
    """Index of ``arm`` at the current state.  For the imed family this is
    a score to *minimise*; every other family maximises."""
    n = state.counts[arm]
    if n < 1:
        raise ValueError(f"arm {arm} has not been pulled yet")
    mean = state.sums[arm] / n
    t = state.t
    fam = spec.family

    if fam == "ucb":
        bonus = 2.0 * math.log(t) / n if spec.ucb_classic else math.log(t) / (2.0 * n)
        return mean + math.sqrt(bonus)
    if fam == "moss":
        return moss_index(mean, n, spec.horizon / state.k, spec.exploration)
    if fam == "moss-anytime":
        return moss_index(mean, n, t / state.k, spec.exploration)
    if fam == "klucb":
        d = _explo(spec.exploration, spec.horizon / (state.k * n)) / n
        return klucb_index(state.dists[arm], d)
    if fam == "klucb-anytime":
        d = _explo(spec.exploration, t / (state.k * n)) / n
        return klucb_index(state.dists[arm], d)
    if fam == "klucb-switch":
        f = switch_value(spec.horizon, state.k, spec.switch_exponent)
        if n <= f:
            d = _explo(spec.exploration, spec.horizon / (state.k * n)) / n
            return klucb_index(state.dists[arm], d)
        return moss_index(mean, n, spec.horizon / state.k, spec.exploration)
    if fam == "klucb-switch-anytime":
        f = switch_value(t, state.k, spec.switch_exponent)
        if n <= f:
            d = _explo(spec.exploration, t / (state.k * n)) / n
            return klucb_index(state.dists[arm], d)
        return moss_index(mean, n, t / state.k, spec.exploration)
    if fam == "imed":
        return _imed_score(state, arm)
    if fam == "klucb-exp":
        ratio = (spec.horizon if spec.horizon is not None else t) / state.k
        d = _explo(spec.exploration, ratio / n) / n
        return exp_kl_index(max(mean, 1e-12), d)
    if fam == "klucb-gauss":
        ratio = (spec.horizon if spec.horizon is not None else t) / state.k
        return mean + math.sqrt(2.0 * spec.sigma**2 * _explo(spec.exploration, ratio / n) / n)
    raise AssertionError(f"unhandled family {fam!r}")


def select_arm(spec: PolicySpec, state: PolicyState, tie_u: Optional[float] = None) -> int:
    """Arm choice: argmax of the family index (argmin for imed), ties
    broken uniformly at random.

    ``tie_u`` injects the tie-break uniform explicitly (the simulation
    engines do this for replayability); otherwise ``state.rng`` is used.
    """
    scores = [compute_index(spec, state, a) for a in range(state.k)]
    best = min(scores) if spec.family == "imed" else max(scores)
    tied = [a for a, s in enumerate(scores) if s == best]
    if len(tied) == 1:
        return tied[0]
    if tie_u is None:
        if state.rng is None:
            raise ValueError("tie-break needs tie_u or a state rng")
        tie_u = float(state.rng.random())
    return tied[int(tie_u * len(tied))]
