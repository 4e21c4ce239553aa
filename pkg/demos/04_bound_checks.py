"""Bound checkers in action: Monte-Carlo frequencies against the
finite-time deviation/concentration inequalities, at a scale small enough
to watch.  The full-fidelity versions run via `bandit-switch verify`.

Run:  python demos/04_bound_checks.py
"""

from bandit_switch import Bernoulli
from bandit_switch.verification import (
    hoeffding_max_check,
    kinf_concentration_check,
    kinf_deviation_check,
    lambert_residual_check,
)


def show(report, max_rows=12):
    print(f"--- {report.bound_name}  (runs = {report.runs})")
    if report.notes:
        print(f"    {report.notes}")
    print(f"    {'point':<28} {'empirical':>12} {'bound':>12} {'ok':>4}")
    for p in report.points[:max_rows]:
        print(f"    {p.label:<28} {p.empirical:>12.5g} {p.bound:>12.5g} {'no' if p.violation else 'yes':>4}")
    if len(report.points) > max_rows:
        print(f"    ... {len(report.points) - max_rows} more points")
    print(f"    violations: {report.violations}")
    print()


print("Upper tail of the empirical-likelihood divergence at the true mean:")
print("P[kinf(empirical_n, mu) >= u] <= e (2n+1) e^(-n u)")
print()
show(kinf_deviation_check(Bernoulli(0.4), n=25, u_grid=(0.05, 0.1, 0.2, 0.4), runs=20_000, seed=101))

print("Lower tail below the population divergence (two-regime bound):")
print()
show(kinf_concentration_check(Bernoulli(0.2), mu=0.5, n_grid=(30,), runs=20_000, seed=102))

print("Maximal Hoeffding inequality over a window of sample sizes:")
print()
show(hoeffding_max_check(Bernoulli(0.5), n_start=15, u_grid=(0.1, 0.2, 0.3), runs=5_000, seed=103))

print("Lambert W: defining-equation residual and the log-log sandwich:")
print()
show(lambert_residual_check(), max_rows=8)
