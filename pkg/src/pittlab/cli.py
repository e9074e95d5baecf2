"""Command-line front end: norm, ft, check, experiment.

A thin adapter over the library: every JSON field maps 1:1 to a library
type field.  Exit codes (stable within major version 1):

* 0 success (check: condition holds; experiment: all scenarios pass or are
  inconclusive by design)
* 1 check: condition fails
* 2 parse or config error
* 3 norm not bracketable / divergent integral
* 4 transform non-convergence
* 5 check: inconclusive
* 6 experiment: scenario failure
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import experiments, hankel, quad, varlp, weights
from .config import ConfigError, Config, build_grid, load_config
from .funcdsl import DomainError, ScalarFn

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_PARSE = 2
EXIT_DIVERGENT = 3
EXIT_NONCONV = 4
EXIT_INCONCLUSIVE = 5
EXIT_SCENARIO = 6


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


def cmd_norm(args) -> int:
    try:
        f = ScalarFn(args.f)
        p = varlp.ExponentProfile(args.p)
    except ValueError as e:
        _err(str(e))
        return EXIT_PARSE
    try:
        res = varlp.luxemburg_norm(f, p, args.tol)
    except (varlp.NotBracketable, quad.DivergentIntegral) as e:
        _err(str(e))
        return EXIT_DIVERGENT
    except DomainError as e:
        _err(str(e))
        return EXIT_PARSE
    print(_dump({"norm": res.norm, "modular_at_norm": res.modular_at_norm,
                 "bracket_width": res.bracket_width,
                 "iterations": res.iterations}))
    return EXIT_OK


def cmd_ft(args) -> int:
    try:
        prof = hankel.RadialProfile(ScalarFn(args.f0), args.n)
    except ValueError as e:
        _err(str(e))
        return EXIT_PARSE
    try:
        sample = hankel.radial_ft(prof, args.xi, args.tol)
    except hankel.NonConvergence as e:
        _err(str(e))
        return EXIT_NONCONV
    except quad.DivergentIntegral as e:
        _err(str(e))
        return EXIT_DIVERGENT
    except (DomainError, ValueError) as e:
        _err(str(e))
        return EXIT_PARSE
    q = sample.quad
    print(_dump({"xi": sample.xi, "value": sample.value,
                 "abs_error_estimate": q.abs_error_estimate,
                 "panels_used": q.panels_used,
                 "tail_terms_used": q.tail_terms_used,
                 "converged": q.converged}))
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        v = weights.WeightProfile(ScalarFn(args.v))
        if args.cond == "bp":
            p = float(args.p)
            alpha = args.alpha if args.alpha is not None else float(args.n - 1)
            rep = weights.check_bp(_maybe_power(v), p, alpha, args.n)
        else:
            pprof = varlp.ExponentProfile(args.p)
            rep = weights.check_21(v, pprof, args.n)
    except (ValueError, ConfigError) as e:
        _err(str(e))
        return EXIT_PARSE
    except quad.DivergentIntegral as e:
        _err(str(e))
        return EXIT_DIVERGENT
    print(_dump({
        "verdict": rep.verdict,
        "sup_ratio": None if math.isnan(rep.sup_ratio) else rep.sup_ratio,
        "witness_r": rep.witness_r,
        "method": rep.method,
        "notes": rep.notes,
        "ratio_profile": [[r, l, rr] for r, l, rr in rep.ratio_profile],
    }))
    return {"holds": EXIT_OK, "fails": EXIT_FAILS}.get(rep.verdict,
                                                       EXIT_INCONCLUSIVE)


def _maybe_power(v: weights.WeightProfile) -> weights.WeightProfile:
    """Detect an exact power law so check_bp can use the closed form."""
    import numpy as np

    from .funcdsl import log_grid
    ts = log_grid(1e-4, 1e4, 17)
    vals = np.asarray([float(v.v(t)) for t in ts])
    if np.any(vals <= 0):
        return v
    beta = np.polyfit(np.log(ts), np.log(vals), 1)[0]
    beta = round(float(beta), 12)
    fit = vals / ts ** beta
    if np.max(np.abs(fit / fit[0] - 1.0)) < 1e-9:
        return weights.WeightProfile(v.v, power_law=beta)
    return v


# ---------------------------------------------------------------------------
# experiment dispatch


def _scenario_report(name: str, block: dict, cfg: Config):
    stype = block["type"]
    if stype == "hy-scaling":
        p = varlp.ExponentProfile(
            cfg.function(block["p"], f"scenario {name}: p"),
            p_diamond=block.get("p_diamond"),
            monotone_flag=block.get("p_monotone", "none"))
        f = cfg.function(block["f"], f"scenario {name}: f")
        q = None
        if "q" in block:
            q = varlp.ExponentProfile(cfg.function(block["q"], "q"))
        sched = block.get("lambda_schedule")
        return experiments.run_hy_scaling(
            p, f, q_mode=block.get("q_mode", "conjugate"), q=q,
            lambda_schedule=sched,
            slope_tol=block.get("slope_tol", 0.02))
    if stype == "translation-limit":
        p = varlp.ExponentProfile(
            cfg.function(block["p"], f"scenario {name}: p"),
            p_diamond=block.get("p_diamond"),
            monotone_flag=block.get("p_monotone", "none"))
        f = cfg.function(block["f"], f"scenario {name}: f")
        return experiments.run_translation_limit(
            p, f, block.get("h_schedule"), tol=block.get("tol", 1e-3))
    if stype == "ft-bound":
        grid = build_grid(block["xi_grid"]) if "xi_grid" in block else None
        return experiments.run_ft_bound(
            int(block["n"]), xi_grid=grid,
            include_ball=block.get("include_ball"))
    if stype == "pitt-verify":
        if "gamma" in block:
            p = float(block["p"])
            v = weights.WeightProfile.power(float(block["gamma"]) * p)
        elif "beta" in block:
            v = weights.WeightProfile.power(float(block["beta"]))
        else:
            v = _maybe_power(weights.WeightProfile(
                cfg.function(block["v"], f"scenario {name}: v")))
        return experiments.run_pitt_verify(
            v, float(block["p"]), float(block["alpha"]), int(block["n"]),
            block.get("direction", "sufficiency"),
            r_schedule=tuple(block.get("r_schedule", (0.25, 1.0, 4.0, 16.0))))
    if stype == "hl-variable":
        v = weights.WeightProfile(cfg.function(block["v"],
                                               f"scenario {name}: v"))
        p = varlp.ExponentProfile(
            cfg.function(block["p"], f"scenario {name}: p"),
            monotone_flag=block.get("p_monotone", "none"))
        return experiments.run_hl_variable(v, p, int(block["n"]))
    raise ConfigError(f"unknown scenario type {stype!r}")


def cmd_experiment(args) -> int:
    try:
        cfg = load_config(args.config)
    except (OSError, ConfigError) as e:
        _err(str(e))
        return EXIT_PARSE
    names = list(cfg.scenarios)
    if args.scenario is not None:
        if args.scenario not in cfg.scenarios:
            _err(f"scenario {args.scenario!r} not in config "
                 f"(available: {names})")
            return EXIT_PARSE
        names = [args.scenario]
    out_dir = Path(args.out) if args.out else Path(cfg.output["path"])
    formats = cfg.output["formats"]

    reports = []
    for name in names:
        block = dict(cfg.scenarios[name])
        try:
            rep = _scenario_report(name, block, cfg)
        except (KeyError, ConfigError, ValueError) as e:
            _err(f"scenario {name!r}: {e}")
            return EXIT_PARSE
        reports.append((name, rep))

    out_dir.mkdir(parents=True, exist_ok=True)
    exit_code = EXIT_OK
    for name, rep in reports:
        if "json" in formats:
            (out_dir / f"{name}.json").write_text(rep.to_json() + "\n")
        if "csv" in formats:
            with open(out_dir / f"{name}.csv", "w", newline="") as fh:
                writer = csv.writer(fh)
                for row in rep.csv_rows():
                    writer.writerow(row)
        print(f"{name}: {rep.status}" + (f" ({rep.notes})" if rep.notes
                                         else ""))
        if rep.passed is False:
            exit_code = EXIT_SCENARIO
    return exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pittlab",
        description="Numerical workbench for radial Fourier transforms, "
                    "variable-exponent norms and weighted Fourier-inequality "
                    "conditions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="Luxemburg norm of an even profile")
    p_norm.add_argument("--f", required=True, help="profile expression in t")
    p_norm.add_argument("--p", required=True, help="exponent expression in t")
    p_norm.add_argument("--tol", type=float, default=1e-8)
    p_norm.set_defaults(fn=cmd_norm)

    p_ft = sub.add_parser("ft", help="radial Fourier transform sample")
    p_ft.add_argument("--f0", required=True, help="radial profile expression")
    p_ft.add_argument("--n", type=int, required=True, help="dimension")
    p_ft.add_argument("--xi", type=float, required=True)
    p_ft.add_argument("--tol", type=float, default=quad.TOL_NORM)
    p_ft.set_defaults(fn=cmd_ft)

    p_check = sub.add_parser("check", help="weight condition verdict")
    p_check.add_argument("--cond", choices=["bp", "21"], required=True)
    p_check.add_argument("--v", required=True, help="weight expression")
    p_check.add_argument("--p", required=True,
                         help="exponent (number for bp, expression for 21)")
    p_check.add_argument("--alpha", type=float, default=None)
    p_check.add_argument("--n", type=int, required=True)
    p_check.set_defaults(fn=cmd_check)

    p_exp = sub.add_parser("experiment", help="run scenarios from a config")
    p_exp.add_argument("--config", required=True)
    p_exp.add_argument("--scenario", default=None)
    p_exp.add_argument("--out", default=None)
    p_exp.set_defaults(fn=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
