"""Command-line front end.

Subcommands: solve, table, sweep, asymptote, simulate, validate.
Output formats: json (full precision, stable key order), csv (unrounded
values plus rounded display columns) and markdown (rounded).

Exit codes: 0 success, 2 parameter error, 3 validation failure,
4 internal-consistency error.
"""
import argparse
import csv
import io
import json
import sys
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .asymptotics import limit_indices
from .equilibrium import GameParams, solve
from .errors import CapacityError, InternalConsistencyError, ParameterError
from .indices import evaluate
from .oracle import ENUMERATION_MAX_PLAYERS, enumerate_exact, enumeration_weight_totals, simulate
from .table import (DEFAULT_B_RULES, DEFAULT_N_VALUES, DEFAULT_P_VALUES,
                    TableSpec, build_table, rule_label, sweep)

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4

DEFAULT_VALIDATE_N = tuple(range(1, 11))
DEFAULT_VALIDATE_P = (0.55, 0.75, 0.95)


def round_display(value: float, decimals: int) -> str:
    """Round half away from zero to ``decimals`` places, as a string."""
    if value != value or value in (float("inf"), float("-inf")):
        return str(value)
    q = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def _load_config(path):
    """Simple key=value file; blank lines and '#' comments ignored."""
    config = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParameterError(f"malformed config line: {line!r}")
            key, _, value = line.partition("=")
            config[key.strip()] = value.strip()
    return config


def _parse_floats(text):
    return tuple(float(v) for v in text.split(",") if v.strip())


def _parse_ns(text):
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        values.append(None if item in ("inf", "infinity") else int(item))
    return tuple(values)


def _parse_rules(text):
    return tuple(Fraction(item.strip()) for item in text.split(",") if item.strip())


def _parse_ints(text):
    return tuple(int(v) for v in text.split(",") if v.strip())


def _table_spec(args, config):
    p_values = DEFAULT_P_VALUES
    n_values = DEFAULT_N_VALUES
    b_rules = DEFAULT_B_RULES
    decimals = 3
    if "p_values" in config:
        p_values = _parse_floats(config["p_values"])
    if "n_values" in config:
        n_values = _parse_ns(config["n_values"])
    if "b_rules" in config:
        b_rules = _parse_rules(config["b_rules"])
    if "decimals" in config:
        decimals = int(config["decimals"])
    if args.decimals is not None:
        decimals = args.decimals
    return TableSpec(p_values=p_values, n_values=n_values, b_rules=b_rules,
                     decimals=decimals)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _markdown_table(header, rows):
    lines = ["| " + " | ".join(header) + " |",
             "| " + " | ".join("---" for _ in header) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- solve

def _solve_payload(args):
    params = GameParams(n=args.n, b=args.b, p=args.p)
    result = evaluate(params)
    profile = result.profile
    supply = result.supply
    return {
        "n": params.n,
        "b": params.b,
        "p": params.p,
        "lambda": profile.lam,
        "psi": profile.psi,
        "lambda_H": profile.lambda_h,
        "lambda_L": profile.lambda_l,
        "residual": profile.residual,
        "theta": result.theta,
        "penetration": result.penetration,
        "mean_xy": result.mean_xy,
        "x": supply.x,
        "y": supply.y,
        "supply_H": supply.supply_h,
        "supply_L": supply.supply_l,
    }


def cmd_solve(args, config):
    payload = _solve_payload(args)
    decimals = args.decimals if args.decimals is not None else 3
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(list(payload), [list(payload.values())])
    else:
        rows = [(key, round_display(value, decimals) if isinstance(value, float) else value)
                for key, value in payload.items()]
        text = _markdown_table(("quantity", "value"), rows)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------- table

def _cell_values(cell):
    return (cell.lam, cell.theta, cell.mean_xy, cell.penetration)


def cmd_table(args, config):
    spec = _table_spec(args, config)
    cells = build_table(spec)
    decimals = spec.decimals
    if args.format == "json":
        payload = {
            "p_values": list(spec.p_values),
            "n_values": ["inf" if n is None else n for n in spec.n_values],
            "b_rules": [str(rule) for rule in spec.b_rules],
            "decimals": decimals,
            "cells": [
                {
                    "p": cell.p,
                    "n": "inf" if cell.n is None else cell.n,
                    "b_rule": str(cell.rule),
                    "b": cell.b,
                    "lambda": cell.lam,
                    "theta": cell.theta,
                    "mean_xy": cell.mean_xy,
                    "penetration": cell.penetration,
                }
                for cell in cells
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        header = ["p", "n", "b_rule", "b",
                  "lambda", "theta", "mean_xy", "penetration",
                  "lambda_rounded", "theta_rounded", "mean_xy_rounded",
                  "penetration_rounded"]
        rows = []
        for cell in cells:
            values = _cell_values(cell)
            rows.append([cell.p, "inf" if cell.n is None else cell.n,
                         str(cell.rule), "" if cell.b is None else cell.b]
                        + list(values)
                        + [round_display(v, decimals) for v in values])
        text = _csv_text(header, rows)
    else:
        header = ["p", "n"]
        for rule in spec.b_rules:
            label = rule_label(rule)
            header += [f"lambda [{label}]", f"theta [{label}]",
                       f"(x+y)/2 [{label}]", f"R [{label}]"]
        rows = []
        by_row = {}
        for cell in cells:
            by_row.setdefault((cell.p, cell.n), []).append(cell)
        for p in spec.p_values:
            for n in spec.n_values:
                row = [p, "inf" if n is None else n]
                for cell in by_row[(p, n)]:
                    row += [round_display(v, decimals) for v in _cell_values(cell)]
                rows.append(row)
        text = _markdown_table(header, rows)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------- sweep

def cmd_sweep(args, config):
    best_b, best_value, curve = sweep(args.n, args.p, args.metric)
    decimals = args.decimals if args.decimals is not None else 3
    if args.format == "json":
        payload = {
            "n": args.n,
            "p": args.p,
            "metric": args.metric,
            "best_b": best_b,
            "best_value": best_value,
            "curve": curve,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        rows = [[b, value, 1 if b == best_b else 0]
                for b, value in enumerate(curve, start=1)]
        text = _csv_text(["b", "value", "is_best"], rows)
    else:
        lines = [f"best B for {args.metric} at n={args.n}, p={args.p}: "
                 f"B*={best_b}, value={round_display(best_value, decimals)}", ""]
        rows = [(b, round_display(value, decimals))
                for b, value in enumerate(curve, start=1)]
        lines.append(_markdown_table(("b", args.metric), rows))
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK


# ------------------------------------------------------------- asymptote

def cmd_asymptote(args, config):
    limits = limit_indices(args.q, args.p)
    payload = {
        "q": limits.q,
        "p": args.p,
        "lambda_inf": limits.lambda_inf,
        "x_star": limits.x_star,
        "y_star": limits.y_star,
        "theta_inf": limits.theta_inf,
        "r_bound": limits.r_bound,
    }
    decimals = args.decimals if args.decimals is not None else 3
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(list(payload), [list(payload.values())])
    else:
        rows = [(key, round_display(value, decimals) if isinstance(value, float) else value)
                for key, value in payload.items()]
        text = _markdown_table(("quantity", "value"), rows)
    _emit(text, args.out)
    return EXIT_OK


# -------------------------------------------------------------- simulate

def cmd_simulate(args, config):
    params = GameParams(n=args.n, b=args.b, p=args.p)
    result = evaluate(params)
    report = simulate(params, result.profile.lam, args.trials, args.seed)
    analytic = {
        "theta": result.theta,
        "penetration": result.penetration,
        "supply_h": result.supply.supply_h,
        "supply_l": result.supply.supply_l,
        "x": result.supply.x,
        "y": result.supply.y,
    }
    payload = {
        "n": params.n,
        "b": params.b,
        "p": params.p,
        "lambda": result.profile.lam,
        "trials": report.trials,
        "seed": report.seed,
        "generator": report.generator,
        "estimates": report.estimates,
        "std_errors": report.std_errors,
        "analytic": analytic,
    }
    decimals = args.decimals if args.decimals is not None else 3
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        header = ["quantity", "estimate", "std_error", "analytic"]
        rows = [[key, report.estimates[key], report.std_errors[key],
                 analytic.get(key, "")] for key in report.estimates]
        text = _csv_text(header, rows)
    else:
        rows = []
        for key in report.estimates:
            rows.append((key,
                         round_display(report.estimates[key], decimals),
                         round_display(report.std_errors[key], decimals + 2),
                         round_display(analytic[key], decimals)
                         if key in analytic else ""))
        text = _markdown_table(("quantity", "estimate", "std_error", "analytic"), rows)
    _emit(text, args.out)
    return EXIT_OK


# -------------------------------------------------------------- validate

_ENUM_TOL = 1e-12
_MC_SIGMA = 4.0


def _validate_checks(args, config):
    n_values = DEFAULT_VALIDATE_N
    p_values = DEFAULT_VALIDATE_P
    if "validate_n" in config:
        n_values = _parse_ints(config["validate_n"])
    if "validate_p" in config:
        p_values = _parse_floats(config["validate_p"])
    checks = []
    for n in n_values:
        thresholds = sorted({1, -(-n // 2), n})
        for p in p_values:
            for b in thresholds:
                params = GameParams(n=n, b=b, p=p)
                solved = solve(params).lam
                for lam in (0.0, 0.5, solved):
                    name = f"enumeration n={n} b={b} p={p} lambda={lam:.6g}"
                    if n > ENUMERATION_MAX_PLAYERS:
                        checks.append({"name": name, "status": "skipped",
                                       "tolerance": _ENUM_TOL, "deviation": None,
                                       "reason": "n exceeds enumeration capacity"})
                        continue
                    exact = enumerate_exact(params, lam)
                    analytic = evaluate(params, profile=exact.profile)
                    deviation = max(
                        abs(exact.theta - analytic.theta),
                        abs(exact.penetration - analytic.penetration),
                        abs(exact.mean_xy - analytic.mean_xy),
                        abs(exact.supply.x - analytic.supply.x),
                        abs(exact.supply.y - analytic.supply.y),
                        abs(exact.supply.supply_h - analytic.supply.supply_h),
                        abs(exact.supply.supply_l - analytic.supply.supply_l),
                    )
                    total_h, total_l = enumeration_weight_totals(params, lam)
                    deviation = max(deviation, abs(total_h - 1.0), abs(total_l - 1.0))
                    checks.append({"name": name,
                                   "status": "pass" if deviation <= _ENUM_TOL else "fail",
                                   "tolerance": _ENUM_TOL,
                                   "deviation": deviation})
    for n, b, p in ((3, 3, 0.75), (10, 5, 0.75)):
        params = GameParams(n=n, b=b, p=p)
        result = evaluate(params)
        report = simulate(params, result.profile.lam, args.trials, args.seed)
        analytic = {
            "theta": result.theta,
            "penetration": result.penetration,
            "supply_h": result.supply.supply_h,
            "supply_l": result.supply.supply_l,
            "x": result.supply.x,
            "y": result.supply.y,
        }
        worst = 0.0
        for key, value in analytic.items():
            se = report.std_errors[key]
            if se == 0.0:
                continue
            worst = max(worst, abs(report.estimates[key] - value) / se)
        checks.append({"name": f"monte-carlo n={n} b={b} p={p} trials={args.trials}",
                       "status": "pass" if worst <= _MC_SIGMA else "fail",
                       "tolerance": _MC_SIGMA,
                       "deviation": worst})
    return checks


def cmd_validate(args, config):
    if args.trials < 1:
        raise ParameterError(f"trials must be >= 1, got {args.trials}")
    checks = _validate_checks(args, config)
    failed = any(c["status"] == "fail" for c in checks)
    if args.format == "csv":
        rows = [[c["name"], c["status"], c["tolerance"],
                 "" if c["deviation"] is None else c["deviation"],
                 c.get("reason", "")] for c in checks]
        text = _csv_text(["check", "status", "tolerance", "deviation", "reason"], rows)
    elif args.format == "markdown":
        rows = [(c["name"], c["status"], c["tolerance"],
                 "" if c["deviation"] is None else f"{c['deviation']:.3g}",
                 c.get("reason", "")) for c in checks]
        text = _markdown_table(("check", "status", "tolerance", "deviation", "reason"), rows)
    else:
        text = json.dumps({"passed": not failed, "checks": checks}, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_VALIDATION if failed else EXIT_OK


# ------------------------------------------------------------------ main

def _add_common(parser):
    parser.add_argument("--format", choices=("json", "csv", "markdown"),
                        default="json")
    parser.add_argument("--decimals", type=int, default=None)
    parser.add_argument("--config", default=None)
    parser.add_argument("--out", default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crowdgame",
        description="Equilibrium, correctness and market-penetration "
                    "calculations for threshold crowdfunding games.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one game and print its indices")
    p_solve.add_argument("--n", type=int, required=True)
    p_solve.add_argument("--b", type=int, required=True)
    p_solve.add_argument("--p", type=float, required=True)
    _add_common(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_table = sub.add_parser("table", help="evaluate the (p, n, threshold-rule) grid")
    _add_common(p_table)
    p_table.set_defaults(func=cmd_table)

    p_sweep = sub.add_parser("sweep", help="evaluate an index for every threshold B")
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--p", type=float, required=True)
    p_sweep.add_argument("--metric", choices=("theta", "penetration"),
                         default="theta")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_asym = sub.add_parser("asymptote", help="closed-form limit quantities")
    p_asym.add_argument("--p", type=float, required=True)
    p_asym.add_argument("--q", type=float, required=True)
    _add_common(p_asym)
    p_asym.set_defaults(func=cmd_asymptote)

    p_sim = sub.add_parser("simulate", help="Monte Carlo playout at the solved equilibrium")
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--b", type=int, required=True)
    p_sim.add_argument("--p", type=float, required=True)
    p_sim.add_argument("--trials", type=int, default=100_000)
    p_sim.add_argument("--seed", type=int, default=0)
    _add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_val = sub.add_parser("validate", help="run the oracle cross-checks")
    p_val.add_argument("--trials", type=int, default=100_000)
    p_val.add_argument("--seed", type=int, default=0)
    _add_common(p_val)
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if args.config else {}
        return args.func(args, config)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
