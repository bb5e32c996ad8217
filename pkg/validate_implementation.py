#!/usr/bin/env python3
"""
Acceptance Validation Script for wrightkit
==========================================

Runs the acceptance checks end to end against the library and the command
line: cross-representation agreement, differentiation and collapse identities,
structural probes, the inequality audit (asserted and suspect classes), the
Gamma-minimum constant, extended-precision oracle values and the CLI contract.

Usage:
    python validate_implementation.py

Writes validation_results.csv to the working directory and exits 0 when every
check passes.
"""

import contextlib
import io
import json
import math
import sys
import tempfile
import time
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

import config
import oracle
from errors import WrightKitError
from gamma_core import gamma, x_star
from inequality_audit import CATALOG, GridSpec, audit_sweep, evaluate_inequality
from integral_eval import (gen_wright_via_beta_kernel, gen_wright_via_pochhammer_kernel,
                           wright_via_integral)
from property_probes import (check_completely_monotone, check_log_convex_arg,
                             check_log_convex_param)
from series_eval import (FoxWrightSpec, GenWrightParams, WrightParams, fox_wright, gen_wright,
                         gen_wright_derivative, ml4, wright, wright_derivative, wright_neg)
from wrightkit import main as cli_main

# =============================================================================
# GRIDS
# =============================================================================

AGREEMENT_ALPHAS = [0.5, 1.0, 1.5, 2.0]
AGREEMENT_OFFSETS = [0.5, 1.0, 2.0]
AGREEMENT_Z = [-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0]
AGREEMENT_GAMMAS = [0.5, 1.0]
AGREEMENT_SIGMA_OFFSETS = [1.0, 2.0]

FD_STEP = 1e-5
FD_TOL = 1e-6
COLLAPSE_TOL = 1e-10
ORACLE_REL_TOL = 1e-12

# (α, β) with β > α > x*, and (γ, σ) with σ > γ > 0
PROBE_SETS = [
    (1.5, 2.0, 0.5, 1.5), (1.5, 2.5, 1.0, 2.0), (1.5, 3.5, 0.5, 2.5), (1.6, 1.7, 1.0, 3.0),
    (1.6, 2.6, 0.5, 1.0), (1.6, 4.0, 1.0, 1.5), (2.0, 2.5, 0.5, 3.0), (2.0, 3.0, 1.0, 4.0),
    (2.0, 4.0, 0.5, 2.0), (2.5, 3.0, 1.0, 2.0),
]
PROBE_INTERVAL = (0.05, 0.95)
SIGMA_INTERVAL = (1.0, 5.0)
SIGMA_PROBE_Z = [0.5, 1.0, 2.0]

SUSPECT_SWEEP = ["LB_777", "LB_888", "ML_EXPLB", "SUPERADD_25", "SUPERADD_25K"]
SMALL_Z = 0.05


def agreement_grid():
    for a in AGREEMENT_ALPHAS:
        for off in AGREEMENT_OFFSETS:
            for z in AGREEMENT_Z:
                yield a, a + off, z


def agree(series_value: float, series_err: float, quad_value: float, quad_err: float) -> bool:
    return abs(series_value - quad_value) <= max(1e-8, 3.0 * (series_err + quad_err))


def close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def run_cli(argv: List[str]) -> Dict:
    """Run the CLI in-process; capture its exit code and stdout."""
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_main(argv)
    return {"code": code, "stdout": out.getvalue(), "stderr": err.getvalue()}


class AcceptanceValidator:
    """Acceptance suite for the evaluation library, the audit and the CLI."""

    def __init__(self):
        self.test_results = []
        self.failed_tests = []

    def log_test(self, test_name: str, passed: bool, message: str, details: Optional[Dict] = None):
        """Log a test result."""
        result = {
            "test": test_name,
            "passed": passed,
            "message": message,
            "details": details or {}
        }
        self.test_results.append(result)

        if not passed:
            self.failed_tests.append(result)

    def print_separator(self, title: str = None):
        print("\n" + "=" * 80)
        if title:
            print(f"  {title}")
            print("=" * 80)

    # =========================================================================
    # AC1: series vs quadrature
    # =========================================================================

    def validate_cross_representation(self) -> bool:
        self.print_separator("AC1: Series vs Integral Representations")

        worst = 0.0
        failures = []
        checked = 0
        for a, b, z in agreement_grid():
            p = WrightParams(a, b)
            s, q = wright(p, z), wright_via_integral(p, z)
            checked += 1
            worst = max(worst, abs(s.value - q.value))
            if not agree(s.value, s.abs_error_estimate, q.value, q.abs_error_estimate):
                failures.append({"alpha": a, "beta": b, "z": z, "series": s.value, "integral": q.value})

            for g in AGREEMENT_GAMMAS:
                for s_off in AGREEMENT_SIGMA_OFFSETS:
                    gp = GenWrightParams(a, b, g, g + s_off)
                    gs = gen_wright(gp, z)
                    for name, quad in (("beta_kernel", gen_wright_via_beta_kernel),
                                       ("pochhammer_kernel", gen_wright_via_pochhammer_kernel)):
                        gq = quad(gp, z)
                        checked += 1
                        worst = max(worst, abs(gs.value - gq.value))
                        if not agree(gs.value, gs.abs_error_estimate, gq.value, gq.abs_error_estimate):
                            failures.append({"alpha": a, "beta": b, "gamma": g, "sigma": g + s_off,
                                             "z": z, "rule": name, "series": gs.value,
                                             "integral": gq.value})

        passed = not failures
        status = "✅ PASS" if passed else "❌ FAIL"
        print(f"\n{status} {checked} comparisons, largest gap {worst:.3e}")
        for f in failures[:5]:
            print(f"      ❌ {f}")
        self.log_test("AC1 cross-representation agreement", passed,
                      f"{checked} comparisons, {len(failures)} disagreements",
                      {"worst_gap": worst, "failures": failures[:5]})
        return passed

    # =========================================================================
    # AC2: differentiation identities
    # =========================================================================

    def validate_derivatives(self) -> bool:
        self.print_separator("AC2: Differentiation Identities")

        h = FD_STEP
        worst = 0.0
        failures = []
        for a, b, z in agreement_grid():
            if abs(z) > 3:
                continue
            p = WrightParams(a, b)
            fd = (wright(p, z + h).value - wright(p, z - h).value) / (2 * h)
            gap = abs(fd - wright_derivative(p, z).value)
            worst = max(worst, gap)
            if gap > FD_TOL:
                failures.append({"alpha": a, "beta": b, "z": z, "gap": gap})

            for g in AGREEMENT_GAMMAS:
                gp = GenWrightParams(a, b, g, g + 1.0)
                fd = (gen_wright(gp, z + h).value - gen_wright(gp, z - h).value) / (2 * h)
                gap = abs(fd - gen_wright_derivative(gp, z).value)
                worst = max(worst, gap)
                if gap > FD_TOL:
                    failures.append({"alpha": a, "beta": b, "gamma": g, "z": z, "gap": gap})

        passed = not failures
        print(f"\n{'✅ PASS' if passed else '❌ FAIL'} largest finite-difference gap {worst:.3e} "
              f"(tolerance {FD_TOL:g})")
        self.log_test("AC2 differentiation identities", passed,
                      f"worst gap {worst:.3e}", {"failures": failures[:5]})
        return passed

    # =========================================================================
    # AC3: collapse identities
    # =========================================================================

    def validate_collapse(self) -> bool:
        self.print_separator("AC3: Collapse Identities")

        counts = {"gamma_equals_sigma": 0, "ml4_unit": 0, "ml4_sigma": 0, "ident_1010": 0}
        failures = []
        for a, b, z in agreement_grid():
            w = wright(WrightParams(a, b), z).value

            if not close(gen_wright(GenWrightParams(a, b, 1.7, 1.7), z).value, w, COLLAPSE_TOL):
                failures.append(("gamma_equals_sigma", a, b, z))
            counts["gamma_equals_sigma"] += 1

            if not close(ml4(a, b, 1.0, 1.0, z).value, w, COLLAPSE_TOL):
                failures.append(("ml4_unit", a, b, z))
            counts["ml4_unit"] += 1

            for s in (1.5, 3.0):
                lhs = gen_wright(GenWrightParams(a, b, 1.0, s), z).value
                rhs = gamma(s) * ml4(a, b, 1.0, s, z).value
                if not close(lhs, rhs, COLLAPSE_TOL):
                    failures.append(("ml4_sigma", a, b, z))
                counts["ml4_sigma"] += 1

            if z > 0:
                record = evaluate_inequality("IDENT_1010", {"alpha": a, "beta": b, "z": z})
                if record.status != "holds":
                    failures.append(("ident_1010", a, b, z))
                counts["ident_1010"] += 1

        for name, n in counts.items():
            bad = sum(1 for f in failures if f[0] == name)
            print(f"  {'✅' if bad == 0 else '❌'} {name:<20s} {n - bad}/{n}")
        passed = not failures
        self.log_test("AC3 collapse identities", passed, f"{len(failures)} mismatches",
                      {"counts": counts, "failures": failures[:5]})
        return passed

    # =========================================================================
    # AC4: structural probes
    # =========================================================================

    def validate_probes(self) -> bool:
        self.print_separator("AC4: Structural Probes")

        all_passed = True
        for a, b, g, s in PROBE_SETS:
            wp = WrightParams(a, b)
            gp = GenWrightParams(a, b, g, s)
            cm_w = check_completely_monotone(lambda x: wright_neg(wp, x).value, PROBE_INTERVAL)
            cm_g = check_completely_monotone(lambda x: gen_wright(gp, -x).value, PROBE_INTERVAL)
            lc = check_log_convex_arg(lambda x: wright_neg(wp, x).value, PROBE_INTERVAL)
            # W̌ is log-concave near 0; the probe has to find it
            lc_ok = (not lc.passed) and lc.worst_point["x_lo"] < 0.5
            passed = cm_w.passed and cm_g.passed and lc_ok
            all_passed = all_passed and passed
            print(f"  {'✅' if passed else '❌'} (α={a}, β={b}, γ={g}, σ={s}): "
                  f"CM W̌ {cm_w.passed}, CM W̌^(γ,σ) {cm_g.passed}, "
                  f"log-convex in z rejected {lc_ok} (margin {lc.worst_margin:.2e})")
            self.log_test(f"AC4 probes α={a} β={b} γ={g} σ={s}", passed,
                          f"cm={cm_w.passed}/{cm_g.passed} log_convex_rejected={lc_ok}",
                          {"cm_margin": cm_w.worst_margin, "log_convex_margin": lc.worst_margin,
                           "log_convex_worst_point": lc.worst_point})

        for z in SIGMA_PROBE_Z:
            family = lambda s, z=z: gen_wright(GenWrightParams(1.5, 2.0, 1.0, s), z).value
            result = check_log_convex_param(family, SIGMA_INTERVAL)
            print(f"  {'✅' if result.passed else '❌'} log-convex in σ on {SIGMA_INTERVAL} at z={z} "
                  f"(margin {result.worst_margin:.2e})")
            self.log_test(f"AC4 log-convexity in sigma z={z}", result.passed,
                          f"margin {result.worst_margin:.3e}")
            all_passed = all_passed and result.passed
        return all_passed

    # =========================================================================
    # AC5 / AC6: inequality audit
    # =========================================================================

    def validate_asserted_audit(self) -> bool:
        self.print_separator("AC5: Inequality Audit, Asserted Class")

        ids = [i for i, e in CATALOG.items() if e.expected == "asserted"]
        report = audit_sweep(ids, GridSpec.default(), n_jobs=config.n_jobs())
        bad = report.asserted_violations
        errors = [r for r in report.records if r.status == "eval_error"]
        checked = sum(1 for r in report.records if r.status in ("holds", "violated"))

        passed = not bad and not errors
        print(f"\n{'✅ PASS' if passed else '❌ FAIL'} {len(ids)} ids, {checked} points in hypothesis, "
              f"{len(bad)} violations, {len(errors)} evaluation errors")
        for r in (bad + errors)[:5]:
            print(f"      ❌ {r.id} at {r.point}: {r.status} {r.detail}")
        self.log_test("AC5 asserted inequalities", passed,
                      f"{checked} points, {len(bad)} violations",
                      {"violations": [r.to_dict() for r in bad[:5]]})
        return passed

    def validate_suspect_audit(self) -> bool:
        self.print_separator("AC6: Inequality Audit, Suspect Class")

        report = audit_sweep(SUSPECT_SWEEP, GridSpec.default(), n_jobs=config.n_jobs())
        violations = report.violations()
        mismatched = []
        for r in violations:
            again = evaluate_inequality(r.id, r.point)
            if again.status != "violated" or again.margin != r.margin:
                mismatched.append(r)

        lb = [r for r in report.violations("LB_777") if r.point["z"] <= SMALL_Z]
        passed = not mismatched and bool(lb)
        print(f"\n  sweep completed: {len(report.records)} records, {len(violations)} violations")
        print(f"  {'✅' if not mismatched else '❌'} violations reproduce on re-evaluation")
        print(f"  {'✅' if lb else '❌'} LB_777 violated at z <= {SMALL_Z}: {len(lb)} points")
        for row in report.summary:
            if row["violated"]:
                print(f"      ⚠️  {row['id']:<14s} {row['violated']:>4d}/{row['points']:<4d} "
                      f"worst {row['worst_margin']:.3e} at {row['worst_point']}")
        self.log_test("AC6 suspect inequalities", passed,
                      f"{len(violations)} violations, {len(mismatched)} not reproduced",
                      {"lb_777_small_z": len(lb)})
        return passed

    # =========================================================================
    # AC7 / AC8: constants and oracle values
    # =========================================================================

    def validate_constants(self) -> bool:
        self.print_separator("AC7: Gamma Minimum")

        xs = x_star()
        gap = abs(xs - config.X_STAR_REFERENCE)
        passed = gap <= 1e-6
        print(f"\n{'✅ PASS' if passed else '❌ FAIL'} x* = {xs:.12f} (|x* - {config.X_STAR_REFERENCE}| "
              f"= {gap:.2e})")
        self.log_test("AC7 x_star", passed, f"x_star={xs!r}", {"gap": gap})
        return passed

    def validate_oracle_values(self) -> bool:
        self.print_separator("AC8: Known Values vs Extended Precision")

        all_passed = True
        for a, b in ((1.0, 1.0), (1.0, 2.0)):
            value = wright(WrightParams(a, b), 1.0).value
            reference = oracle.to_float(oracle.wright(a, b, 1.0))
            passed = abs(value - reference) <= ORACLE_REL_TOL * abs(reference)
            all_passed = all_passed and passed
            print(f"  {'✅' if passed else '❌'} W_({a},{b})(1) = {value!r} (oracle {reference!r})")
            self.log_test(f"AC8 wright({a},{b},1)", passed, f"{value!r} vs {reference!r}")

        spec = FoxWrightSpec(((1.0, 1.0),), ((1.0, 1.0),))
        for z in (-1.0, 0.0, 1.0, 3.0):
            value = fox_wright(spec, z).value
            passed = abs(value - math.exp(z)) <= ORACLE_REL_TOL * math.exp(z)
            all_passed = all_passed and passed
            print(f"  {'✅' if passed else '❌'} 1Ψ1[(1,1);(1,1)]({z}) = {value!r} (exp {math.exp(z)!r})")
            self.log_test(f"AC8 fox_wright exp z={z}", passed, f"{value!r}")
        return all_passed

    # =========================================================================
    # AC9: CLI contract
    # =========================================================================

    def validate_cli(self) -> bool:
        self.print_separator("AC9: Command-Line Contract")

        checks = {}
        with tempfile.TemporaryDirectory() as tmp:
            tmp = Path(tmp)

            table = tmp / "table.csv"
            res = run_cli(["table", "--func", "wright", "--alpha", "1.5", "--beta", "2",
                           "--z-start", "0.1", "--z-end", "0.9", "--steps", "9",
                           "--output", str(table)])
            frame = pd.read_csv(table, comment="#", float_precision="round_trip")
            exact = res["code"] == config.EXIT_OK
            for z, value in zip(frame["z"], frame["value"]):
                ev = run_cli(["eval", "--func", "wright", "--alpha", "1.5", "--beta", "2",
                              "--z", repr(float(z)), "--format", "json"])
                exact = exact and json.loads(ev["stdout"])["value"] == value
            checks["table round trip bit-exact"] = exact

            res = run_cli(["audit", "--ids", "TURAN_26", "--default-grid",
                           "--output-dir", str(tmp / "suspect")])
            checks["suspect violations exit 0"] = res["code"] == config.EXIT_OK
            res = run_cli(["audit", "--ids", "NO_SUCH_ID", "--output-dir", str(tmp / "bad")])
            checks["unknown id exits 2"] = res["code"] == config.EXIT_USAGE
            res = run_cli(["eval", "--func", "wright", "--alpha", "1", "--beta", "-1", "--z", "0"])
            checks["pole exits 1"] = res["code"] == config.EXIT_EVAL_ERROR

            args = ["audit", "--ids", "DOUBLING_211,TURAN_GAMMA", "--no-header"]
            run_cli(args + ["--output-dir", str(tmp / "a")])
            run_cli(args + ["--output-dir", str(tmp / "b")])
            checks["audit output deterministic"] = all(
                (tmp / "a" / name).read_bytes() == (tmp / "b" / name).read_bytes()
                for name in ("records.jsonl", "summary.csv"))

        for name, ok in checks.items():
            print(f"  {'✅' if ok else '❌'} {name}")
            self.log_test(f"AC9 {name}", ok, "ok" if ok else "contract broken")
        return all(checks.values())

    def generate_report(self) -> bool:
        self.print_separator("VALIDATION SUMMARY")

        total_tests = len(self.test_results)
        passed_tests = sum(1 for t in self.test_results if t["passed"])
        failed_tests = len(self.failed_tests)

        print(f"\nTotal Tests:  {total_tests}")
        print(f"Passed:       {passed_tests} ({passed_tests / total_tests * 100:.1f}%)")
        print(f"Failed:       {failed_tests} ({failed_tests / total_tests * 100:.1f}%)")

        if failed_tests > 0:
            print("\n❌ FAILED TESTS:")
            for test in self.failed_tests:
                print(f"\n  Test: {test['test']}")
                print(f"  Message: {test['message']}")
                if test["details"]:
                    print(f"  Details: {test['details']}")

        output_file = Path("validation_results.csv")
        df = pd.DataFrame(self.test_results)
        df["details"] = df["details"].map(lambda d: json.dumps(d, default=str))
        df.to_csv(output_file, index=False)
        print(f"\n✅ Saved detailed results to: {output_file}")

        print("\n" + "=" * 80)
        if failed_tests == 0:
            print("✅ ✅ ✅  ALL ACCEPTANCE CHECKS PASSED  ✅ ✅ ✅")
        else:
            print("❌ ❌ ❌  SOME ACCEPTANCE CHECKS FAILED  ❌ ❌ ❌")
            print(f"\n{failed_tests} issues found. Review failed tests above.")
        print("=" * 80)

        return failed_tests == 0


def main() -> int:
    print("=" * 80)
    print("  WRIGHTKIT ACCEPTANCE VALIDATOR")
    print("=" * 80)
    print(f"\nTimestamp: {time.strftime('%Y-%m-%d %H:%M:%S')}")
    print(f"Python: {sys.version.split()[0]}  numpy: {np.__version__}  pandas: {pd.__version__}")

    validator = AcceptanceValidator()

    tests = [
        ("AC1 Cross-Representation", validator.validate_cross_representation),
        ("AC2 Derivatives", validator.validate_derivatives),
        ("AC3 Collapse Identities", validator.validate_collapse),
        ("AC4 Structural Probes", validator.validate_probes),
        ("AC5 Asserted Audit", validator.validate_asserted_audit),
        ("AC6 Suspect Audit", validator.validate_suspect_audit),
        ("AC7 Constants", validator.validate_constants),
        ("AC8 Oracle Values", validator.validate_oracle_values),
        ("AC9 CLI Contract", validator.validate_cli),
    ]

    for test_name, test_func in tests:
        try:
            test_func()
        except WrightKitError as e:
            print(f"\n❌ CRITICAL ERROR in {test_name}: {type(e).__name__}: {e}")
            validator.log_test(test_name, False, f"Exception: {e}")

    all_passed = validator.generate_report()
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
