"""Command-line experiment runner: scenario ingestion, Monte-Carlo
orchestration, and CSV/JSON emission for external plotting.

Sub-commands
------------
- ``run <config>``: execute one scenario (explicit or preset), writing
  ``regret.csv`` (columns policy,t,mean_regret,stderr,runs) and
  ``meta.json`` (the fully expanded configuration plus a version stamp).
- ``sweep <config>``: execute a one-axis sweep (x, K or T) of a
  gap-profile preset, writing ``sweep.csv``
  (sweep_param,sweep_value,policy,normalized_regret) and ``meta.json``.
- ``verify <suite>``: run a verification suite and write
  ``verify_<suite>.csv``; exits 0 only with zero violations.

Exit codes: 0 success, 1 runtime failure, 2 malformed configuration or
unknown suite.  Output is data only; plotting is left to external tools.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import subprocess
import sys

from . import __version__
from .distributions import BanditInstance, Bernoulli
from .policies import PolicySpec
from .simulator import (
    ConfigurationError,
    Scenario,
    default_record_grid,
    monte_carlo,
    normalized_regret,
)
from .verification import SUITES, run_suite

_ANYTIME_ROSTER = (
    {"family": "ucb", "label": "UCB"},
    {"family": "moss-anytime", "label": "MOSS"},
    {"family": "klucb-anytime", "label": "KL-UCB"},
    {"family": "klucb-switch-anytime", "switch_exponent": 8.0 / 9.0, "label": "KL-UCB-switch"},
    {"family": "imed", "label": "IMED"},
)

# Figure-style presets: anytime policies with plain log_plus exploration
# and the delayed switch floor(t/K)^(8/9).
PRESETS = {
    "fig1-left": {
        "bandit": {"arms": [{"kind": "bernoulli", "p": 0.9}, {"kind": "bernoulli", "p": 0.8}]},
        "horizon": 10_000,
        "runs": 10_000,
        "seed": 20_240_301,
        "policies": list(_ANYTIME_ROSTER),
    },
    "fig1-middle": {
        "bandit": {
            "arms": [{"kind": "truncexp", "mean": m} for m in (0.15, 0.12, 0.10, 0.05)]
        },
        "horizon": 10_000,
        "runs": 10_000,
        "seed": 20_240_302,
        "policies": list(_ANYTIME_ROSTER) + [{"family": "klucb-exp", "label": "kl-UCB-exp"}],
    },
    "fig1-right": {
        "bandit": {
            "arms": [{"kind": "truncgauss", "mean": m, "sigma": 0.1} for m in (0.7, 0.5, 0.3, 0.2)]
        },
        "horizon": 10_000,
        "runs": 10_000,
        "seed": 20_240_303,
        "policies": list(_ANYTIME_ROSTER) + [{"family": "klucb-gauss", "sigma": 0.1, "label": "kl-UCB-Gauss"}],
    },
}

# Gap-profile presets for sweeps: Bernoulli(0.8, 0.8 - x sqrt(K/T), ...).
SWEEP_PRESETS = {
    "fig2-left": {"k": 2, "horizon": 10_000, "runs": 5000, "seed": 20_240_304},
    "fig2-right": {"k": 2, "horizon": 10_000, "runs": 5000, "seed": 20_240_305},
}

_DEFAULT_X_GRID = [round(0.1 * i, 1) for i in range(1, 31)]
_SWEEP_AXES = {"x", "T", "K"}

_RUN_KEYS = {"bandit", "horizon", "policies", "runs", "seed", "record_grid", "bins", "parallelism", "out_dir"}
_SWEEP_KEYS = {"preset", "axis", "values", "x", "k", "horizon", "runs", "seed", "policies", "parallelism", "out_dir"}


def _fmt(x) -> str:
    # repr of a Python float is the shortest round-trip form.
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"malformed JSON in {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _expand_run_config(cfg: dict) -> dict:
    """Resolve presets and defaults into a fully explicit run config."""
    if not isinstance(cfg, dict):
        raise ConfigurationError("run config must be a JSON object")
    if "config" in cfg:  # meta.json round-trip wrapper
        cfg = cfg["config"]
    if "preset" in cfg:
        name = cfg["preset"]
        if name not in PRESETS:
            raise ConfigurationError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
        merged = dict(PRESETS[name])
        overrides = {k: v for k, v in cfg.items() if k != "preset"}
        bad = set(overrides) - _RUN_KEYS
        if bad:
            raise ConfigurationError(f"unknown config keys: {sorted(bad)}")
        merged.update(overrides)
        cfg = merged
    bad = set(cfg) - _RUN_KEYS
    if bad:
        raise ConfigurationError(f"unknown config keys: {sorted(bad)}")
    for key in ("bandit", "horizon", "policies", "runs", "seed"):
        if key not in cfg:
            raise ConfigurationError(f"missing config key: {key!r}")
    return cfg


def _scenario_from_config(cfg: dict) -> Scenario:
    try:
        bandit = BanditInstance.from_config(cfg["bandit"])
        policies = tuple(PolicySpec.from_config(p) for p in cfg["policies"])
        grid = cfg.get("record_grid", "geometric")
        if grid == "geometric":
            grid = default_record_grid(bandit.k, int(cfg["horizon"]))
        elif grid == "full":
            grid = tuple(range(1, int(cfg["horizon"]) + 1))
        else:
            grid = tuple(int(t) for t in grid)
        return Scenario(
            bandit=bandit,
            horizon=int(cfg["horizon"]),
            policies=policies,
            runs=int(cfg["runs"]),
            base_seed=int(cfg["seed"]),
            record_grid=grid,
            bins=cfg.get("bins"),
        )
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigurationError(f"invalid scenario configuration: {exc}")


def _expanded_echo(scenario: Scenario) -> dict:
    return {
        "bandit": scenario.bandit.to_config(),
        "horizon": scenario.horizon,
        "policies": [p.to_config() for p in scenario.policies],
        "runs": scenario.runs,
        "seed": scenario.base_seed,
        "record_grid": list(scenario.record_grid),
        "bins": scenario.bins,
    }


def _stamp() -> dict:
    stamp = {"package": "bandit-switch", "version": __version__}
    try:
        rev = subprocess.run(
            ["git", "rev-parse", "HEAD"],
            capture_output=True,
            text=True,
            cwd=os.path.dirname(__file__),
            timeout=5,
        )
        stamp["git"] = rev.stdout.strip() if rev.returncode == 0 else "unknown"
    except (OSError, subprocess.SubprocessError):
        stamp["git"] = "unknown"
    return stamp


def _write_meta(out_dir: str, config: dict) -> None:
    with open(os.path.join(out_dir, "meta.json"), "w") as fh:
        json.dump({"config": config, "stamp": _stamp()}, fh, indent=2)
        fh.write("\n")


def _parallelism(args, cfg: dict) -> int:
    if args.parallelism is not None:
        return args.parallelism
    env = os.environ.get("BANDIT_SWITCH_THREADS")
    if env:
        return max(1, int(env))
    if cfg.get("parallelism"):
        return int(cfg["parallelism"])
    return os.cpu_count() or 1


def cmd_run(args) -> int:
    cfg = _expand_run_config(_load_json(args.config))
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.runs is not None:
        cfg["runs"] = args.runs
    scenario = _scenario_from_config(cfg)
    out_dir = args.out_dir or cfg.get("out_dir") or "."
    os.makedirs(out_dir, exist_ok=True)
    curve = monte_carlo(scenario, parallelism=_parallelism(args, cfg))
    with open(os.path.join(out_dir, "regret.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["policy", "t", "mean_regret", "stderr", "runs"])
        for p_idx, name in enumerate(curve.policies):
            for g_idx, t in enumerate(curve.grid):
                writer.writerow(
                    [name, int(t), _fmt(float(curve.mean[p_idx, g_idx])), _fmt(float(curve.stderr[p_idx, g_idx])), curve.runs]
                )
    _write_meta(out_dir, _expanded_echo(scenario))
    print(f"wrote {os.path.join(out_dir, 'regret.csv')}")
    return 0


def _sweep_scenario(policies, k: int, horizon: int, x: float, runs: int, seed: int) -> Scenario:
    gap = x * math.sqrt(k / horizon)
    if gap >= 0.8:
        raise ConfigurationError(f"gap x*sqrt(K/T)={gap:.3f} pushes arm means below 0")
    arms = (Bernoulli(0.8),) + tuple(Bernoulli(0.8 - gap) for _ in range(k - 1))
    return Scenario(
        bandit=BanditInstance(arms),
        horizon=horizon,
        policies=policies,
        runs=runs,
        base_seed=seed,
        record_grid=(horizon,),
    )


def cmd_sweep(args) -> int:
    cfg = _load_json(args.config)
    if not isinstance(cfg, dict):
        raise ConfigurationError("sweep config must be a JSON object")
    bad = set(cfg) - _SWEEP_KEYS
    if bad:
        raise ConfigurationError(f"unknown sweep config keys: {sorted(bad)}")
    preset_name = cfg.get("preset")
    if preset_name not in SWEEP_PRESETS:
        raise ConfigurationError(f"sweep preset must be one of {sorted(SWEEP_PRESETS)}")
    preset = dict(SWEEP_PRESETS[preset_name])
    axis = cfg.get("axis", "x")
    if axis not in _SWEEP_AXES:
        raise ConfigurationError(f"sweep axis must be one of {sorted(_SWEEP_AXES)}")
    if axis == "x":
        values = cfg.get("values", _DEFAULT_X_GRID)
    elif axis == "T":
        values = cfg.get("values", [100, 1000, 10_000])
    else:
        values = cfg.get("values", [2, 10, 50])
    if not values:
        raise ConfigurationError("sweep values must be non-empty")
    fixed_x = float(cfg.get("x", 1.0))
    fixed_k = int(cfg.get("k", preset["k"]))
    horizon = int(cfg.get("horizon", preset["horizon"]))
    runs = int(args.runs if args.runs is not None else cfg.get("runs", preset["runs"]))
    seed = int(args.seed if args.seed is not None else cfg.get("seed", preset["seed"]))
    policy_cfgs = cfg.get("policies", list(_ANYTIME_ROSTER))
    out_dir = args.out_dir or cfg.get("out_dir") or "."
    os.makedirs(out_dir, exist_ok=True)
    parallelism = _parallelism(args, cfg)

    rows = []
    expanded_points = []
    for value in values:
        x = float(value) if axis == "x" else fixed_x
        k = int(value) if axis == "K" else fixed_k
        t = int(value) if axis == "T" else horizon
        policies = tuple(PolicySpec.from_config(dict(p, horizon=t) if _needs_horizon(p) else dict(p)) for p in policy_cfgs)
        scenario = _sweep_scenario(policies, k, t, x, runs, seed)
        curve = monte_carlo(scenario, parallelism=parallelism)
        norm = normalized_regret(curve, k, t)
        if not isinstance(norm, dict):
            norm = {curve.policies[0]: norm}
        for name in curve.policies:
            rows.append([axis, value, name, _fmt(float(norm[name]))])
        expanded_points.append({"sweep_value": value, "scenario": _expanded_echo(scenario)})
    with open(os.path.join(out_dir, "sweep.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sweep_param", "sweep_value", "policy", "normalized_regret"])
        writer.writerows(rows)
    _write_meta(out_dir, {"preset": preset_name, "axis": axis, "values": list(values), "points": expanded_points})
    print(f"wrote {os.path.join(out_dir, 'sweep.csv')}")
    return 0


def _needs_horizon(policy_cfg: dict) -> bool:
    return policy_cfg.get("family") in ("moss", "klucb", "klucb-switch")


def cmd_verify(args) -> int:
    suite = args.suite
    if suite not in SUITES:
        print(f"unknown suite {suite!r}; known: {', '.join(SUITES)}", file=sys.stderr)
        return 2
    out_dir = args.out_dir or "."
    os.makedirs(out_dir, exist_ok=True)
    parallelism = args.parallelism or int(os.environ.get("BANDIT_SWITCH_THREADS", 0)) or (os.cpu_count() or 1)
    reports = run_suite(suite, runs=args.runs, parallelism=parallelism)
    path = os.path.join(out_dir, f"verify_{suite}.csv")
    violations = 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bound_name", "point", "empirical", "bound", "stderr", "violation", "runs"])
        for rep in reports:
            violations += rep.violations
            for p in rep.points:
                writer.writerow(
                    [rep.bound_name, p.label, _fmt(p.empirical), _fmt(p.bound), _fmt(p.stderr), int(p.violation), rep.runs]
                )
    for rep in reports:
        status = "ok" if rep.ok else f"{rep.violations} VIOLATIONS"
        print(f"{rep.bound_name}: {len(rep.points)} points, {status}")
    print(f"wrote {path}")
    return 0 if violations == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandit-switch",
        description="Bandit simulation and bound-verification runner (CSV/JSON output).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--parallelism", type=int, default=None, help="worker processes (default: cores; env BANDIT_SWITCH_THREADS)")
        p.add_argument("--seed", type=int, default=None, help="override the configured base seed")
        p.add_argument("--out-dir", default=None, help="output directory (default: current)")
        p.add_argument("--runs", type=int, default=None, help="override the configured run count")

    p_run = sub.add_parser("run", help="run one scenario from a JSON config or preset")
    p_run.add_argument("config", help="path to the scenario JSON (or a meta.json echo)")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a one-axis sweep (x, K or T) of a gap-profile preset")
    p_sweep.add_argument("config", help="path to the sweep JSON")
    common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
