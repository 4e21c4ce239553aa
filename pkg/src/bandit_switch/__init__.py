"""Bounded-reward bandit policies built around an empirical-likelihood
confidence-bound solver, with a reproducible Monte-Carlo harness and a
verification suite for the finite-time bounds the policies satisfy."""

from .distributions import (
    ArmModel,
    BanditInstance,
    Bernoulli,
    Dirac,
    Discrete,
    EmpiricalDistribution,
    TruncatedExponential,
    TruncatedGaussian,
    arm_from_config,
    sample,
    true_mean,
)
from .kinf import (
    KinfResult,
    KinfWitness,
    bernoulli_kl,
    exp_kl_index,
    h_derivative,
    h_value,
    kinf,
    kinf_weighted,
    kinf_witness,
    klucb_index,
)
from .policies import (
    EXPLORATIONS,
    FAMILIES,
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
from .simulator import (
    ConfigurationError,
    EpisodeResult,
    RegretCurve,
    Scenario,
    default_record_grid,
    monte_carlo,
    normalized_regret,
    run_episode,
    run_seed,
)

__version__ = "0.1.0"
