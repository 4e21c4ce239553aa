"""Reward models on [0, 1] and the weighted-atom empirical distribution.

Arms are distributions supported by [0, 1].  Unbounded models (exponential,
Gaussian) are truncated by *clamping*: a draw ``X`` becomes
``min(max(X, 0), 1)``, which piles mass onto the endpoints.  Model
parameters are pre-truncation quantities and ``true_mean`` returns the
exact post-clamping expectation.

All sampling is routed through each model's ``quantile`` (inverse CDF), so
a single uniform variate fully determines a reward.  This is what lets the
simulation engines replay any run from a counter-based key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.special import ndtri

__all__ = [
    "EmpiricalDistribution",
    "Bernoulli",
    "TruncatedExponential",
    "TruncatedGaussian",
    "Dirac",
    "Discrete",
    "ArmModel",
    "BanditInstance",
    "arm_from_config",
    "sample",
    "true_mean",
]

ArrayLike = Union[float, np.ndarray]

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)


def _norm_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / _SQRT2PI


def _norm_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / _SQRT2))


class EmpiricalDistribution:
    """Multiset of observations in [0, 1], stored as sorted weighted atoms.

    The canonical form (strictly increasing atom values, positive integer
    counts) makes the representation independent of observation order.

    Parameters
    ----------
    values, counts:
        Parallel sequences defining the atoms.  Values must be strictly
        increasing and lie in [0, 1]; counts must be positive integers.
    bins:
        Optional grid size.  When set, observations are rounded to the
        uniform grid ``{0, 1/bins, ..., 1}`` before insertion, which caps
        the support size for long streams of continuous rewards.
    """

    __slots__ = ("_values", "_counts", "_total", "_sum", "_bins")

    def __init__(self, values: Sequence[float] = (), counts: Sequence[int] = (), *, bins: int | None = None):
        v = np.asarray(values, dtype=float)
        c = np.asarray(counts, dtype=np.int64)
        if v.shape != c.shape or v.ndim != 1:
            raise ValueError("values and counts must be 1-d and of equal length")
        if v.size:
            if np.any((v < 0.0) | (v > 1.0)):
                raise ValueError("atom values must lie in [0, 1]")
            if np.any(np.diff(v) <= 0.0):
                raise ValueError("atom values must be strictly increasing")
            if np.any(c < 1):
                raise ValueError("atom counts must be >= 1")
        if bins is not None and bins < 1:
            raise ValueError("bins must be a positive integer")
        self._values = v
        self._counts = c
        self._total = int(c.sum())
        self._sum = float(np.dot(v, c)) if v.size else 0.0
        self._bins = bins

    @classmethod
    def from_observations(cls, xs: Iterable[float], *, bins: int | None = None) -> "EmpiricalDistribution":
        dist = cls(bins=bins)
        for x in xs:
            dist._push(float(x))
        return dist

    def _grid(self, x: float) -> float:
        if self._bins is None:
            return x
        return round(x * self._bins) / self._bins

    def _push(self, x: float) -> None:
        # In-place insertion; reserved for an owner that holds the only reference.
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"observation {x!r} outside [0, 1]")
        x = self._grid(x)
        i = int(np.searchsorted(self._values, x))
        if i < self._values.size and self._values[i] == x:
            self._counts[i] += 1
        else:
            self._values = np.insert(self._values, i, x)
            self._counts = np.insert(self._counts, i, 1)
        self._total += 1
        self._sum += x

    def observe(self, x: float) -> "EmpiricalDistribution":
        """Return a new distribution with one more observation of ``x``."""
        out = EmpiricalDistribution(bins=self._bins)
        out._values = self._values.copy()
        out._counts = self._counts.copy()
        out._total = self._total
        out._sum = self._sum
        out._push(float(x))
        return out

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def counts(self) -> np.ndarray:
        return self._counts

    @property
    def weights(self) -> np.ndarray:
        return self._counts / self._total

    @property
    def atoms(self) -> list[tuple[float, int]]:
        return [(float(v), int(c)) for v, c in zip(self._values, self._counts)]

    @property
    def total_count(self) -> int:
        return self._total

    @property
    def mean(self) -> float:
        if self._total == 0:
            raise ValueError("mean of an empty distribution")
        return self._sum / self._total

    def __len__(self) -> int:
        return self._values.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmpiricalDistribution):
            return NotImplemented
        return (
            self._total == other._total
            and self._values.shape == other._values.shape
            and bool(np.all(self._values == other._values))
            and bool(np.all(self._counts == other._counts))
        )

    def __repr__(self) -> str:
        return f"EmpiricalDistribution(n={self._total}, atoms={len(self)})"


@dataclass(frozen=True)
class Bernoulli:
    p: float
    kind = "bernoulli"

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("Bernoulli parameter must lie in [0, 1]")

    def true_mean(self) -> float:
        return self.p

    def quantile(self, u: ArrayLike) -> ArrayLike:
        return np.where(u < self.p, 1.0, 0.0)

    @property
    def support_binary(self) -> bool:
        return True

    def to_config(self) -> dict:
        return {"kind": "bernoulli", "p": self.p}


@dataclass(frozen=True)
class TruncatedExponential:
    """Exponential with pre-truncation expectation ``mean``, clamped to [0, 1]."""

    mean: float
    kind = "truncexp"

    def __post_init__(self):
        if self.mean <= 0.0:
            raise ValueError("pre-truncation mean must be positive")

    def true_mean(self) -> float:
        # E[min(X, 1)] for X ~ Exp with mean theta.
        theta = self.mean
        return theta * (1.0 - math.exp(-1.0 / theta))

    def quantile(self, u: ArrayLike) -> ArrayLike:
        return np.minimum(-self.mean * np.log1p(-u), 1.0)

    @property
    def support_binary(self) -> bool:
        return False

    def to_config(self) -> dict:
        return {"kind": "truncexp", "mean": self.mean}


@dataclass(frozen=True)
class TruncatedGaussian:
    """Gaussian with pre-truncation mean/sigma, clamped to [0, 1]."""

    mean: float
    sigma: float
    kind = "truncgauss"

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")

    def true_mean(self) -> float:
        # E[clip(X, 0, 1)] = P(X >= 1) + m (Phi(b) - Phi(a)) - s (pdf(b) - pdf(a))
        a = (0.0 - self.mean) / self.sigma
        b = (1.0 - self.mean) / self.sigma
        return (
            (1.0 - _norm_cdf(b))
            + self.mean * (_norm_cdf(b) - _norm_cdf(a))
            - self.sigma * (_norm_pdf(b) - _norm_pdf(a))
        )

    def quantile(self, u: ArrayLike) -> ArrayLike:
        return np.clip(self.mean + self.sigma * ndtri(u), 0.0, 1.0)

    @property
    def support_binary(self) -> bool:
        return False

    def to_config(self) -> dict:
        return {"kind": "truncgauss", "mean": self.mean, "sigma": self.sigma}


@dataclass(frozen=True)
class Dirac:
    value: float
    kind = "dirac"

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError("Dirac value must lie in [0, 1]")

    def true_mean(self) -> float:
        return self.value

    def quantile(self, u: ArrayLike) -> ArrayLike:
        return np.full_like(np.asarray(u, dtype=float), self.value)

    @property
    def support_binary(self) -> bool:
        return self.value in (0.0, 1.0)

    def to_config(self) -> dict:
        return {"kind": "dirac", "value": self.value}


@dataclass(frozen=True)
class Discrete:
    """Finite distribution on [0, 1] atoms.

    Probabilities must sum to 1 within 1e-12; the constructor renormalises
    the residual and records the adjustment.
    """

    values: tuple
    probs: tuple
    adjustment: float = field(default=0.0, compare=False)
    kind = "discrete"

    def __post_init__(self):
        v = tuple(float(x) for x in self.values)
        p = tuple(float(x) for x in self.probs)
        if len(v) != len(p) or not v:
            raise ValueError("values and probs must be non-empty and of equal length")
        if any(not 0.0 <= x <= 1.0 for x in v):
            raise ValueError("atom values must lie in [0, 1]")
        if any(x < 0.0 for x in p):
            raise ValueError("probabilities must be non-negative")
        total = math.fsum(p)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1 within 1e-12")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "probs", tuple(x / total for x in p))
        object.__setattr__(self, "adjustment", total - 1.0)

    def true_mean(self) -> float:
        return math.fsum(v * p for v, p in zip(self.values, self.probs))

    def quantile(self, u: ArrayLike) -> ArrayLike:
        cum = np.cumsum(self.probs)
        idx = np.searchsorted(cum, u, side="right")
        idx = np.minimum(idx, len(self.values) - 1)
        return np.asarray(self.values, dtype=float)[idx]

    @property
    def support_binary(self) -> bool:
        return all(v in (0.0, 1.0) for v in self.values)

    def to_config(self) -> dict:
        return {"kind": "discrete", "values": list(self.values), "probs": list(self.probs)}


ArmModel = Union[Bernoulli, TruncatedExponential, TruncatedGaussian, Dirac, Discrete]

_KINDS = {
    "bernoulli": lambda c: Bernoulli(p=c["p"]),
    "truncexp": lambda c: TruncatedExponential(mean=c["mean"]),
    "truncgauss": lambda c: TruncatedGaussian(mean=c["mean"], sigma=c["sigma"]),
    "dirac": lambda c: Dirac(value=c["value"]),
    "discrete": lambda c: Discrete(values=tuple(c["values"]), probs=tuple(c["probs"])),
}

_KIND_KEYS = {
    "bernoulli": {"kind", "p"},
    "truncexp": {"kind", "mean"},
    "truncgauss": {"kind", "mean", "sigma"},
    "dirac": {"kind", "value"},
    "discrete": {"kind", "values", "probs"},
}


def arm_from_config(cfg: dict) -> ArmModel:
    """Build an arm model from its JSON-style configuration dict."""
    if not isinstance(cfg, dict) or "kind" not in cfg:
        raise ValueError(f"arm config must be a dict with a 'kind' key, got {cfg!r}")
    kind = cfg["kind"]
    if kind not in _KINDS:
        raise ValueError(f"unknown arm kind {kind!r}")
    extra = set(cfg) - _KIND_KEYS[kind]
    if extra:
        raise ValueError(f"unknown keys {sorted(extra)} in {kind!r} arm config")
    missing = _KIND_KEYS[kind] - set(cfg)
    if missing:
        raise ValueError(f"missing keys {sorted(missing)} in {kind!r} arm config")
    return _KINDS[kind](cfg)


def sample(arm: ArmModel, rng: np.random.Generator) -> float:
    """Draw one reward from ``arm`` using ``rng``; always lands in [0, 1]."""
    return float(arm.quantile(rng.random()))


def true_mean(arm: ArmModel) -> float:
    return arm.true_mean()


@dataclass(frozen=True)
class BanditInstance:
    """A bandit problem: a tuple of arms with derived gap structure."""

    arms: tuple

    def __post_init__(self):
        if not self.arms:
            raise ValueError("a bandit instance needs at least one arm")
        object.__setattr__(self, "arms", tuple(self.arms))

    @property
    def k(self) -> int:
        return len(self.arms)

    @property
    def means(self) -> np.ndarray:
        return np.array([a.true_mean() for a in self.arms])

    @property
    def mu_star(self) -> float:
        return float(self.means.max())

    @property
    def gaps(self) -> np.ndarray:
        m = self.means
        return m.max() - m

    def to_config(self) -> dict:
        return {"arms": [a.to_config() for a in self.arms]}

    @classmethod
    def from_config(cls, cfg: dict) -> "BanditInstance":
        if not isinstance(cfg, dict) or set(cfg) - {"arms"}:
            raise ValueError("bandit config must be a dict with only an 'arms' key")
        return cls(arms=tuple(arm_from_config(a) for a in cfg["arms"]))
