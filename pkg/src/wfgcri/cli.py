"""Command line entry point.

Every run writes a JSON manifest (arguments, seed, version, timestamps and
sha256 digests of what was emitted).  Exit codes: 0 success, 2 usage error,
3 numerical failure.  Errors go to stderr as one JSON object with a stable
``code`` field.
"""
from __future__ import annotations

import argparse
import csv
import difflib
import hashlib
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import pandas as pd

from . import __version__
from .chaos import bifurcation_data, beta_grid, wfgcri_curve
from .distributions import parse_model
from .estimators import estimate_wfgcri_phr, estimate_wfgcri_two_sample
from .exceptions import WfgcriError
from .finance import (RollingConfig, compare_series, log_returns, read_prices,
                      rolling_wfgcri)
from .measures import MEASURES, IntegrationConfig, MeasureRequest, PowerWeight, evaluate
from .montecarlo import PhrScenario, StudyConfig, TwoSampleScenario, emit_table, run_study
from .theory import THEOREMS, run_config

DIGITS = 9
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
SEED_ENV = "WFGCRI_SEED"


class UsageError(Exception):
    code = "usage_error"


# -- formatting ---------------------------------------------------------------

def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), f".{DIGITS}g")


def _round(x):
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return float(format(x, f".{DIGITS}g")) if math.isfinite(x) else None
    return x


def to_json(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


# -- argument types -----------------------------------------------------------

def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", ",").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", ",").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _range3(text: str) -> np.ndarray:
    parts = text.split(":")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    if not (step > 0 and hi >= lo):
        raise argparse.ArgumentTypeError(f"need step > 0 and hi >= lo in {text!r}")
    return beta_grid(lo, hi, step)


def _range2(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    if not hi > lo:
        raise argparse.ArgumentTypeError(f"need hi > lo in {text!r}")
    return lo, hi


def _model(text: str):
    try:
        return parse_model(text)
    except WfgcriError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer")


# -- subcommands ----------------------------------------------------------------

def cmd_measure(args):
    req = MeasureRequest(
        true=args.true, ref=args.ref, beta=args.beta, weight=PowerWeight(args.weight_exp),
        t=args.t, alpha=args.alpha,
        config=IntegrationConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                                 sf_cut=args.sf_cut))
    result = evaluate(args.measure, req)
    payload = {"value": result} if isinstance(result, float) else result.to_dict()
    return to_json(payload) + "\n"


def _read_column(path: str) -> np.ndarray:
    frame = pd.read_csv(path, header=None)
    if frame.shape[1] != 1:
        raise UsageError(f"{path}: expected a single column, found {frame.shape[1]}")
    col = pd.to_numeric(frame.iloc[:, 0], errors="coerce")
    if pd.isna(col.iloc[0]):
        col = col.iloc[1:]  # header row
    if col.isna().any():
        raise UsageError(f"{path}: non-numeric value in row {int(col.isna().to_numpy().argmax()) + 2}")
    return col.to_numpy(dtype=float)


def cmd_estimate(args):
    x = _read_column(args.true)
    if args.ref is None:
        value = estimate_wfgcri_phr(x, args.alpha, args.beta, args.weight_exp)
        payload = {"estimate": value, "n": int(x.size), "m": None}
    else:
        y = _read_column(args.ref)
        value = estimate_wfgcri_two_sample(x, y, args.beta, args.weight_exp)
        payload = {"estimate": value, "n": int(x.size), "m": int(y.size)}
    return to_json(payload) + "\n"


def cmd_simulate(args):
    if args.scenario == "phr":
        scenario = PhrScenario(args.rate, args.alpha)
    else:
        scenario = TwoSampleScenario(args.rate, args.ref_rate)
    config = StudyConfig(scenario, args.betas, args.ns, args.reps, args.seed)
    return emit_table(run_study(config, jobs=args.jobs), args.format, digits=DIGITS)


def _verify_task(task):
    theorem, index, seed = task
    return [(c.theorem, c.config_hash, c.lhs, c.rhs, c.slack, c.holds, c.status)
            for c in run_config(theorem, index, seed)]


def cmd_verify(args):
    theorems = THEOREMS if args.theorem == "all" else (args.theorem,)
    tasks = [(th, i, args.seed) for th in theorems for i in range(args.configs)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            blocks = list(pool.map(_verify_task, tasks, chunksize=8))
    else:
        blocks = [_verify_task(t) for t in tasks]
    rows = []
    for block in blocks:
        for theorem, h, lhs, rhs, slack, holds, status in block:
            rows.append((theorem, h, lhs, rhs, slack,
                         "" if holds is None else holds, status))
    counts = {}
    for row in rows:
        counts[row[-1]] = counts.get(row[-1], 0) + 1
    print(to_json({"checks": len(rows), "status_counts": counts}), file=sys.stderr)
    return csv_text(("theorem", "config_hash", "lhs", "rhs", "slack", "holds", "status"),
                    rows)


def _curve_task(task):
    kind, r, betas, alpha, x0, n, burn_in = task
    return wfgcri_curve(kind, [r], betas, alpha, x0, n, burn_in)


def cmd_chaos(args):
    if args.bifurcation:
        if args.r_range is None:
            raise UsageError("--bifurcation needs --r-range lo:hi")
        data = bifurcation_data(args.map, args.r_range, args.r_steps, args.x0,
                                args.transient, args.keep)
        return csv_text(("r", "x"), data)
    if not args.r_list:
        raise UsageError("chaos needs --r-list (or --bifurcation)")
    if args.beta_range is not None:
        betas = args.beta_range
    else:
        betas = beta_grid(0.01, 5.0 if args.map == "ricker" else 2.0, 0.01)
    tasks = [(args.map, r, betas, args.alpha, args.x0, args.n, args.burn_in)
             for r in args.r_list]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            curves = list(pool.map(_curve_task, tasks))
    else:
        curves = [_curve_task(t) for t in tasks]
    rows = [row for curve in curves for row in curve.rows()]
    return csv_text(("r", "beta", "value", "degenerate"), rows)


def _date_label(value):
    if isinstance(value, (np.datetime64, pd.Timestamp)):
        return pd.Timestamp(value).strftime("%Y-%m-%d")
    return value


def cmd_finance_roll(args):
    returns = log_returns(read_prices(args.input))
    betas = args.beta_range if args.beta_range is not None else beta_grid(0.01, 2.0, 0.01)
    config = RollingConfig(args.window, args.step, tuple(betas), tuple(args.alphas),
                           args.per_window_shift)
    grid = rolling_wfgcri(returns, config)
    rows = [(_date_label(r.window_start), r.beta, r.alpha, r.value, bool(r.degenerate))
            for r in grid.itertuples(index=False)]
    return csv_text(("window_start", "beta", "alpha", "value", "degenerate"), rows)


def cmd_finance_compare(args):
    x = log_returns(read_prices(args.true))
    y = log_returns(read_prices(args.ref))
    betas = args.beta_range if args.beta_range is not None else beta_grid(0.01, 5.0, 0.01)
    return csv_text(("beta", "value"), compare_series(x, y, betas))


# -- parser -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _out_flags(p):
    p.add_argument("--out", help="write the result here instead of stdout")
    p.add_argument("--manifest",
                   help="run manifest path (default: OUT.manifest.json, or "
                        "wfgcri-<command>.manifest.json in the working directory)")


def _jobs_flag(p):
    p.add_argument("--jobs", type=_positive_int, default=1,
                   help="worker processes; output does not depend on this")


def _seed_flag(p):
    p.add_argument("--seed", type=int, default=None,
                   help=f"base seed (default: ${SEED_ENV}, else 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wfgcri", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wfgcri {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("measure", help="evaluate a measure by quadrature")
    p.add_argument("--measure", required=True, choices=MEASURES)
    p.add_argument("--true", required=True, type=_model, help="true model, e.g. exp:rate=2.5")
    p.add_argument("--ref", type=_model, help="reference model")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--weight-exp", type=float, default=1.0, help="c in the weight w**c")
    p.add_argument("--t", type=float, default=None, help="inspection time (dynamic measures)")
    p.add_argument("--alpha", type=float, default=None, help="PHR/PO parameter")
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--sf-cut", type=float, default=1e-12,
                   help="truncate where the true survival function falls below this")
    _out_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("estimate", help="plug-in estimate from observation files")
    p.add_argument("--true", required=True, help="single-column CSV of observations")
    p.add_argument("--ref", help="second sample; switches to the two-sample estimator")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--alpha", type=float, default=1.0, help="PHR parameter (single sample)")
    p.add_argument("--weight-exp", type=float, default=1.0)
    _out_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="Monte Carlo bias/RMSE/CI table")
    p.add_argument("--scenario", choices=("phr", "two-sample"), required=True)
    p.add_argument("--betas", type=_float_list, required=True)
    p.add_argument("--ns", type=_int_list, required=True, help="sample sizes, e.g. 100,300,1000")
    p.add_argument("--reps", type=_positive_int, default=1000)
    p.add_argument("--rate", type=float, default=None,
                   help="true exponential rate (default 0.8 phr, 2.5 two-sample)")
    p.add_argument("--alpha", type=float, default=0.5, help="PHR parameter")
    p.add_argument("--ref-rate", type=float, default=3.5, help="reference rate (two-sample)")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    _seed_flag(p)
    _jobs_flag(p)
    _out_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="randomised bound checks")
    p.add_argument("--theorem", choices=THEOREMS + ("all",), required=True)
    p.add_argument("--configs", type=_positive_int, default=200)
    _seed_flag(p)
    _jobs_flag(p)
    _out_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chaos", help="Ricker/Tent inaccuracy curves or bifurcation data")
    p.add_argument("--map", choices=("ricker", "tent"), required=True)
    p.add_argument("--r-list", type=_float_list, help="growth parameters, e.g. 1,3.1,4.9")
    p.add_argument("--beta-range", type=_range3,
                   help="lo:hi:step (default 0.01:5:0.01 ricker, 0.01:2:0.01 tent)")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--x0", type=float, default=0.01)
    p.add_argument("--n", type=int, default=10_000, help="trajectory length")
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--bifurcation", action="store_true", help="emit (r, x) pairs instead")
    p.add_argument("--r-range", type=_range2, help="lo:hi for --bifurcation")
    p.add_argument("--r-steps", type=int, default=400)
    p.add_argument("--transient", type=int, default=500)
    p.add_argument("--keep", type=int, default=100)
    _jobs_flag(p)
    _out_flags(p)
    p.set_defaults(func=cmd_chaos)

    fin = sub.add_parser("finance", help="price series pipelines")
    fsub = fin.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser,
                              required=True)
    p = fsub.add_parser("roll", help="rolling-window PHR grid")
    p.add_argument("--input", required=True, help="CSV with date,close columns")
    p.add_argument("--window", type=int, default=250)
    p.add_argument("--step", type=int, default=100)
    p.add_argument("--alphas", type=_float_list, default=[5.0, 10.0])
    p.add_argument("--beta-range", type=_range3, help="lo:hi:step (default 0.01:2:0.01)")
    p.add_argument("--per-window-shift", action="store_true",
                   help="shift each window by its own minimum")
    _out_flags(p)
    p.set_defaults(func=cmd_finance_roll)

    p = fsub.add_parser("compare", help="two-series curve over beta")
    p.add_argument("--true", required=True, help="CSV with date,close columns")
    p.add_argument("--ref", required=True, help="CSV with date,close columns")
    p.add_argument("--beta-range", type=_range3, help="lo:hi:step (default 0.01:5:0.01)")
    _out_flags(p)
    p.set_defaults(func=cmd_finance_compare)
    return parser


# -- dispatch --------------------------------------------------------------------

def _command_names(parser):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return list(action.choices)
    return []


def _check_command(parser, argv):
    names = _command_names(parser)
    first = next((a for a in argv if not a.startswith("-")), None)
    if first is not None and first not in names:
        hint = difflib.get_close_matches(first, names, n=1)
        msg = f"unknown command {first!r}"
        if hint:
            msg += f"; did you mean {hint[0]!r}?"
        raise UsageError(msg)


def _emit_error(code, message, **extra):
    print(json.dumps({"code": code, "error": message, **_round(extra)}, sort_keys=True),
          file=sys.stderr)


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _write_manifest(path, args_vector, command, seed, started, status, digests):
    manifest = {
        "command": command,
        "argv": args_vector,
        "seed": seed,
        "version": __version__,
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "exit_status": status,
        "outputs": digests,
    }
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    started = datetime.now(timezone.utc).isoformat()
    parser = build_parser()
    try:
        _check_command(parser, argv)
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        seed = getattr(args, "seed", None)
        seed = _default_seed() if seed is None else seed
        if hasattr(args, "seed"):
            args.seed = seed
        if getattr(args, "scenario", None) and args.rate is None:
            args.rate = 0.8 if args.scenario == "phr" else 2.5
    except UsageError as exc:
        _emit_error(exc.code, str(exc))
        return EXIT_USAGE

    command = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    manifest = args.manifest
    if manifest is None:
        manifest = (f"{args.out}.manifest.json" if args.out
                    else f"wfgcri-{command.replace(' ', '-')}.manifest.json")
    digests = {}
    status = EXIT_OK
    try:
        text = args.func(args)
        if args.out:
            Path(args.out).write_text(text)
            digests[args.out] = _sha256(text)
        else:
            sys.stdout.write(text)
            digests["<stdout>"] = _sha256(text)
    except UsageError as exc:
        _emit_error(exc.code, str(exc))
        status = EXIT_USAGE
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        _emit_error("io_error", str(exc))
        status = EXIT_USAGE
    except WfgcriError as exc:
        extra = exc.diagnostics() if hasattr(exc, "diagnostics") else {}
        _emit_error(exc.code, str(exc), **extra)
        status = EXIT_NUMERIC
    except (ArithmeticError, FloatingPointError) as exc:
        _emit_error("numerical_failure", str(exc))
        status = EXIT_NUMERIC
    _write_manifest(manifest, argv, command, seed, started, status, digests)
    return status


if __name__ == "__main__":
    sys.exit(main())
