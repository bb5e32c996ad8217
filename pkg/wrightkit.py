#!/usr/bin/env python3
"""
wrightkit.py
============
Command-line front end: point evaluation, tables, inequality audits and the
Gamma-minimum constant.

Usage:
    python wrightkit.py eval --func wright --alpha 1 --beta 1 --z 1
    python wrightkit.py eval --func fox-wright --upper 1:1 --lower 1:1 --z 2
    python wrightkit.py table --func wright --alpha 1.5 --beta 2 --z-start 0.1 --z-end 0.9 \\
        --steps 9 --reflect --format csv --output table.csv
    python wrightkit.py audit --ids TURAN_26,LB_777 --default-grid --output-dir audit_results
    python wrightkit.py constants --format json

Exit codes:
    0 success
    1 evaluation error (pole, domain, non-convergence, quadrature)
    2 usage or configuration error
    3 I/O error
    4 an asserted inequality is violated (audit)
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

import config
from errors import ConfigError, WrightKitError
from gamma_core import find_gamma_min
from inequality_audit import AuditRunner, GridSpec, metadata_header, resolve_ids
from integral_eval import (QuadratureSpec, gen_wright_via_beta_kernel,
                           gen_wright_via_pochhammer_kernel, wright_via_integral)
from series_eval import (PRECISIONS, Evaluation, FoxWrightSpec, GenWrightParams,
                         MittagLefflerSpec, WrightParams, fox_wright, gen_wright, mittag_leffler,
                         ml4, wright)

FUNCTIONS = ("wright", "gen-wright", "fox-wright", "ml", "ml4")
FORMATS = ("text", "csv", "json")

# parameters each selector requires; anything else given on the command line is a usage error
FUNCTION_PARAMS = {
    "wright": ("alpha", "beta"),
    "gen-wright": ("alpha", "beta", "gamma", "sigma"),
    "fox-wright": ("upper", "lower"),
    "ml": ("pairs",),
    "ml4": ("alpha", "beta", "alpha2", "beta2"),
}
ALL_PARAMS = ("alpha", "beta", "gamma", "sigma", "alpha2", "beta2", "upper", "lower", "pairs")

TABLE_FIELDS = ["z", "value", "error_estimate"]

Evaluator = Callable[[float], Evaluation]


# =============================================================================
# ARGUMENT PARSING
# =============================================================================

def parse_float_list(text: str, name: str) -> List[float]:
    """Comma-separated floats: '0.5,1,1.5'."""
    try:
        values = [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ConfigError(f"--{name} must be comma-separated numbers, got {text!r}")
    if not values:
        raise ConfigError(f"--{name} is empty")
    return values


def parse_pairs(text: str, name: str) -> Tuple[Tuple[float, float], ...]:
    """Comma-separated 'shift:scale' pairs: '1:1,2:0.5'."""
    pairs = []
    for item in text.split(","):
        parts = item.split(":")
        try:
            if len(parts) != 2:
                raise ValueError
            pairs.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise ConfigError(f"--{name} expects 'shift:scale' pairs, got {item!r}")
    return tuple(pairs)


def _add_function_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--func", required=True, choices=FUNCTIONS, help="Function to evaluate")
    parser.add_argument("--alpha", type=float, help="α (wright, gen-wright); B1 for ml4")
    parser.add_argument("--beta", type=float, help="β (wright, gen-wright); β1 for ml4")
    parser.add_argument("--gamma", type=float, help="γ (gen-wright)")
    parser.add_argument("--sigma", type=float, help="σ (gen-wright)")
    parser.add_argument("--alpha2", type=float, help="B2 (ml4)")
    parser.add_argument("--beta2", type=float, help="β2 (ml4)")
    parser.add_argument("--upper", type=str, help="Fox-Wright numerator pairs 'a:α,...'")
    parser.add_argument("--lower", type=str, help="Fox-Wright denominator pairs 'b:β,...'")
    parser.add_argument("--pairs", type=str, help="Mittag-Leffler pairs 'B:β,...'")
    parser.add_argument("--precision", choices=PRECISIONS, default="double",
                        help="Summation precision; auto retries in extended precision "
                             "when the double sum loses accuracy (default: double)")
    parser.add_argument("--method", choices=("series", "integral"), default="series",
                        help="series, or quadrature of an integral representation")
    parser.add_argument("--reflect", action="store_true",
                        help="Evaluate at -z (W̌(z) = W(-z))")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wrightkit",
        description="Wright-family function evaluation and inequality audits"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="Evaluate one function at one point")
    _add_function_args(p_eval)
    p_eval.add_argument("--z", type=float, required=True, help="Argument")
    p_eval.add_argument("--format", choices=FORMATS, default="text")

    p_table = sub.add_parser("table", help="Tabulate a function over a z range")
    _add_function_args(p_table)
    p_table.add_argument("--z-start", type=float, required=True)
    p_table.add_argument("--z-end", type=float, required=True)
    p_table.add_argument("--steps", type=int, default=11, help="Number of rows (>= 2)")
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--output", type=str, help="Output file (default: stdout)")
    p_table.add_argument("--no-header", action="store_true", help="Omit the metadata line")

    p_audit = sub.add_parser("audit", help="Sweep the inequality catalog over a grid")
    p_audit.add_argument("--ids", type=str, help="Comma-separated inequality ids (default: all)")
    p_audit.add_argument("--default-grid", action="store_true",
                         help="Use the default grid (no axis overrides allowed)")
    p_audit.add_argument("--alpha-grid", type=str, help="Comma-separated α values")
    p_audit.add_argument("--beta-offsets", type=str, help="Comma-separated β - α values")
    p_audit.add_argument("--gamma-grid", type=str, help="Comma-separated γ values")
    p_audit.add_argument("--sigma-offsets", type=str, help="Comma-separated σ - γ values")
    p_audit.add_argument("--z-grid", type=str, help="Comma-separated z values in (0, 1)")
    p_audit.add_argument("--z-extra", type=str, help="Comma-separated z > 1 values")
    p_audit.add_argument("--z-negative", type=str, help="Comma-separated z < 0 values")
    p_audit.add_argument("--output-dir", type=str, default="audit_results",
                         help="Output directory (default: audit_results/)")
    p_audit.add_argument("--n-jobs", type=int, help="Parallel workers (default: WRIGHTKIT_N_JOBS or 1)")
    p_audit.add_argument("--no-header", action="store_true", help="Omit the metadata lines")
    p_audit.add_argument("--verbose", action="store_true", help="Progress and summary on stderr")

    p_const = sub.add_parser("constants", help="Print x* = argmin Γ and Γ(x*)")
    p_const.add_argument("--format", choices=("text", "json"), default="text")
    return parser


# =============================================================================
# EVALUATORS
# =============================================================================

def function_params(args: argparse.Namespace) -> Dict[str, object]:
    """
    Parameters of the selected function, validated against its arity.

    Raises:
        ConfigError: a required parameter is missing or an unrelated one is given
    """
    needed = FUNCTION_PARAMS[args.func]
    given = {name for name in ALL_PARAMS if getattr(args, name) is not None}
    missing = [n for n in needed if n not in given]
    extra = sorted(given - set(needed))
    if missing:
        raise ConfigError(f"{args.func} needs --{', --'.join(missing)}")
    if extra:
        raise ConfigError(f"{args.func} does not take --{', --'.join(extra)}")
    return {name: getattr(args, name) for name in needed}


def make_evaluator(args: argparse.Namespace) -> Evaluator:
    """z -> Evaluation for the selected function, method and precision."""
    params = function_params(args)
    precision = args.precision
    if args.method == "integral":
        if precision != "double":
            raise ConfigError("--method integral runs in double precision only")
        if args.func == "wright":
            p = WrightParams(params["alpha"], params["beta"])
            return lambda z: wright_via_integral(p, z, QuadratureSpec())
        if args.func == "gen-wright":
            g = GenWrightParams(params["alpha"], params["beta"], params["gamma"], params["sigma"])
            if g.kernel_ready:
                return lambda z: gen_wright_via_beta_kernel(g, z, QuadratureSpec())
            return lambda z: gen_wright_via_pochhammer_kernel(g, z, QuadratureSpec())
        raise ConfigError(f"--method integral is not available for {args.func}")

    if args.func == "wright":
        p = WrightParams(params["alpha"], params["beta"])
        return lambda z: wright(p, z, precision)
    if args.func == "gen-wright":
        g = GenWrightParams(params["alpha"], params["beta"], params["gamma"], params["sigma"])
        return lambda z: gen_wright(g, z, precision)
    if args.func == "fox-wright":
        s = FoxWrightSpec(parse_pairs(params["upper"], "upper"), parse_pairs(params["lower"], "lower"))
        return lambda z: fox_wright(s, z, precision)
    if args.func == "ml":
        m = MittagLefflerSpec(parse_pairs(params["pairs"], "pairs"))
        return lambda z: mittag_leffler(m, z, precision)
    return lambda z: ml4(params["alpha"], params["beta"], params["alpha2"], params["beta2"], z,
                         precision)


def _signed(args: argparse.Namespace, z: float) -> float:
    return -z if args.reflect else z


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_eval(args: argparse.Namespace) -> int:
    evaluate = make_evaluator(args)
    ev = evaluate(_signed(args, args.z))
    if args.format == "json":
        print(json.dumps({"func": args.func, "z": args.z, "reflect": args.reflect,
                          "value": ev.value, "error_estimate": ev.abs_error_estimate,
                          "terms_used": ev.terms_used, "method": ev.method}))
    elif args.format == "csv":
        frame = pd.DataFrame([{"z": args.z, "value": ev.value,
                               "error_estimate": ev.abs_error_estimate,
                               "terms_used": ev.terms_used, "method": ev.method}])
        sys.stdout.write(frame.to_csv(index=False, float_format=config.FLOAT_FORMAT,
                                      lineterminator="\n"))
    else:
        print(f"{ev.value!r} ± {ev.abs_error_estimate:.3g}")
    return config.EXIT_OK


def table_rows(evaluate: Evaluator, z_values: Sequence[float], reflect: bool = False) -> List[Dict]:
    rows = []
    for z in z_values:
        ev = evaluate(-z if reflect else z)
        rows.append({"z": z, "value": ev.value, "error_estimate": ev.abs_error_estimate})
    return rows


def cmd_table(args: argparse.Namespace) -> int:
    if args.steps < 2:
        raise ConfigError(f"--steps must be >= 2, got {args.steps}")
    if not args.z_start < args.z_end:
        raise ConfigError(f"need --z-start < --z-end, got {args.z_start} >= {args.z_end}")
    evaluate = make_evaluator(args)
    z_values = [float(z) for z in np.linspace(args.z_start, args.z_end, args.steps)]
    rows = table_rows(evaluate, z_values, args.reflect)

    if args.format == "json":
        payload = {"func": args.func, "params": function_params(args), "reflect": args.reflect,
                   "precision": args.precision, "method": args.method, "rows": rows}
        if not args.no_header:
            payload = {**metadata_header("table"), **payload}
        text = json.dumps(payload) + "\n"
    else:
        frame = pd.DataFrame(rows, columns=TABLE_FIELDS)
        text = frame.to_csv(index=False, float_format=config.FLOAT_FORMAT, lineterminator="\n")
        if not args.no_header:
            text = f"# {json.dumps(metadata_header('table'))}\n" + text

    if args.output:
        path = Path(args.output)
        path.write_text(text, encoding="utf-8")
        print(f"✅ {len(rows)} rows written to {path}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return config.EXIT_OK


def audit_grid(args: argparse.Namespace) -> GridSpec:
    overrides = {
        "alpha": args.alpha_grid, "beta_offset": args.beta_offsets, "gamma": args.gamma_grid,
        "sigma_offset": args.sigma_offsets, "z": args.z_grid, "z_extra": args.z_extra,
        "z_negative": args.z_negative,
    }
    given = {k: v for k, v in overrides.items() if v is not None}
    if args.default_grid and given:
        raise ConfigError("--default-grid cannot be combined with grid overrides")
    grid = GridSpec.default()
    if not given:
        return grid
    fields = {k: getattr(grid, k) for k in overrides}
    for key, text in given.items():
        fields[key] = parse_float_list(text, key.replace("_", "-"))
    return GridSpec(pairs=grid.pairs, **fields)


def cmd_audit(args: argparse.Namespace) -> int:
    ids = resolve_ids(args.ids.split(",")) if args.ids else None
    grid = audit_grid(args)
    runner = AuditRunner(output_dir=args.output_dir, verbose=args.verbose, n_jobs=args.n_jobs,
                         header=not args.no_header)
    report = runner.run(ids, grid)
    bad = report.asserted_violations
    counts = {s: sum(1 for r in report.records if r.status == s)
              for s in ("holds", "violated", "hypothesis_not_met", "eval_error")}
    print(f"records={len(report.records)} " + " ".join(f"{k}={v}" for k, v in counts.items())
          + f" asserted_violations={len(bad)}")
    if bad:
        for r in bad[:10]:
            print(f"❌ {r.id} violated at {r.point} (margin {r.margin:.3e})", file=sys.stderr)
        return config.EXIT_VIOLATION
    return config.EXIT_OK


def cmd_constants(args: argparse.Namespace) -> int:
    c = find_gamma_min()
    if args.format == "json":
        print(json.dumps({"x_star": c.x_star, "gamma_at_x_star": c.gamma_at_x_star,
                          "digamma_at_x_star": c.digamma_at_x_star,
                          "golden_section_x": c.golden_section_x}))
    else:
        print(f"x_star            {c.x_star:.12f}")
        print(f"gamma(x_star)     {c.gamma_at_x_star:.12f}")
        print(f"digamma(x_star)   {c.digamma_at_x_star:.3e}")
        print(f"golden_section_x  {c.golden_section_x:.12f}")
    return config.EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "table": cmd_table,
    "audit": cmd_audit,
    "constants": cmd_constants,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return config.EXIT_USAGE if e.code else config.EXIT_OK

    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"❌ usage error: {e}", file=sys.stderr)
        return config.EXIT_USAGE
    except WrightKitError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return config.EXIT_EVAL_ERROR
    except OSError as e:
        print(f"❌ I/O error: {e}", file=sys.stderr)
        return config.EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
