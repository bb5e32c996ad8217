"""Tests for inequality_audit: catalog margins, hypothesis gating, sweeps and report files."""

import dataclasses
import json

import pandas as pd
import pytest
from joblib import parallel_backend

import config
from errors import ConfigError, DomainError
from gamma_core import gamma, x_star
from inequality_audit import (CATALOG, RECORD_FIELDS, SUMMARY_FIELDS, AuditRunner, GridSpec,
                              InequalityId, SeriesMoments, Sides, audit_sweep, evaluate_inequality,
                              moment_conditions_hold, read_records_jsonl, series_moments, signed_margin,
                              summarize, write_records_jsonl, write_summary_csv)
from series_eval import FoxWrightSpec, WrightParams, wright

ASSERTED = {"W_NONNEG", "PROD_210", "DOUBLING_211", "TS_FW_ALPHA", "UB_6666", "TS_FW_GS", "UB_88",
            "UB_1010", "IDENT_1010", "TURAN_SIGMA_Z3", "TURAN_GAMMA", "ML_TURAN_SIGMA", "ML_PROD"}

SMALL_GRID = GridSpec(alpha=[0.5, 1.6], beta_offset=[0.5, 2.0], gamma=[0.5, 1.0],
                      sigma_offset=[1.0, 3.0], z=[0.1, 0.9], z_extra=[3.0], z_negative=[-0.5],
                      pairs=[(0.1, 0.2)])


def one_point_grid(**axes):
    base = dict(alpha=[1.0], beta_offset=[1.0], gamma=[1.0], sigma_offset=[1.0], z=[0.5])
    base.update(axes)
    return GridSpec(**base)


class TestSeriesMoments:

    def test_unit_pair(self):
        m = series_moments(FoxWrightSpec(((1.0, 1.0),), ((2.0, 1.0),)))
        assert (m.psi0, m.psi1, m.psi2) == pytest.approx((1.0, 0.5, 1.0 / 3.0), rel=1e-14)

    def test_gamma_sigma_pair(self):
        g, s = 0.5, 2.0
        m = series_moments(FoxWrightSpec(((g, 1.0),), ((s, 1.0),)))
        expected = (gamma(g) / gamma(s), gamma(g + 1) / gamma(s + 1), gamma(g + 2) / gamma(s + 2))
        assert (m.psi0, m.psi1, m.psi2) == pytest.approx(expected, rel=1e-13)
        assert moment_conditions_hold(m)

    def test_wright_pair(self):
        # [(α, α)] / [(β, α)] with α = 1.5, β = 2.5
        m = series_moments(FoxWrightSpec(((1.5, 1.5),), ((2.5, 1.5),)))
        assert (m.psi0, m.psi1, m.psi2) == pytest.approx((1.0 / 1.5, 1.0 / 3.0, 1.0 / 4.5), rel=1e-13)

    def test_conditions(self):
        assert moment_conditions_hold(SeriesMoments(1.0, 0.5, 1.0 / 3.0))
        assert not moment_conditions_hold(SeriesMoments(1.0, 1.0, 1.0))

    def test_nonpositive_argument(self):
        with pytest.raises(DomainError):
            series_moments(FoxWrightSpec(((0.0, 1.0),), ((1.0, 1.0),)))


class TestCatalog:

    def test_every_id_present(self):
        assert set(CATALOG) == set(InequalityId)
        assert {i.value for i, e in CATALOG.items() if e.expected == "asserted"} == ASSERTED

    def test_statements_are_set(self):
        for entry in CATALOG.values():
            assert entry.statement
            assert entry.z_domain in ("unit", "positive", "real", "pairs")

    def test_margin_antisymmetry(self):
        for a, b in [(1.0, 0.5), (-3.0, 2.0), (1e-20, 0.0), (7.5, 7.5)]:
            assert signed_margin(a, b) == -signed_margin(b, a)


class TestEvaluateInequality:

    def test_exponential_lower_bound_equality_at_zero(self):
        record = evaluate_inequality("EXPLB_27", {"alpha": 1.5, "beta": 2.0, "z": 1e-8})
        assert record.status == "holds"
        assert abs(record.margin) < 1e-10

    def test_turan_fails_near_zero(self):
        record = evaluate_inequality("TURAN_26", {"alpha": 1.5, "beta": 2.0, "z": 0.5})
        assert record.status == "violated"
        assert record.expected == "suspect"

    def test_positive_exponent_lower_bound_fails(self):
        record = evaluate_inequality("LB_777", {"alpha": 1.0, "beta": 2.0, "z": 0.01})
        assert record.status == "violated"
        # first-order expansion: lhs ≈ 1 - z/2, rhs ≈ 1 + z/2
        assert record.lhs == pytest.approx(1.0 - 0.005, abs=1e-4)
        assert record.rhs == pytest.approx(1.0 + 0.005, abs=1e-4)

    def test_doubling(self):
        record = evaluate_inequality(InequalityId.DOUBLING_211, {"alpha": 1.0, "z": 1.0})
        assert record.status == "holds"
        assert record.margin > 0
        assert list(record.point) == ["alpha", "z"]

    def test_identity(self):
        for alpha, beta, z in [(0.5, 1.0, 0.01), (1.0, 3.0, 2.0), (2.0, 2.5, 5.0)]:
            record = evaluate_inequality("IDENT_1010", {"alpha": alpha, "beta": beta, "z": z})
            assert record.status == "holds"
            assert record.margin >= -config.IDENTITY_TOL

    def test_doubling_matches_product_at_unit_gap(self):
        alpha, z = 1.5, 0.7
        doubling = evaluate_inequality("DOUBLING_211", {"alpha": alpha, "z": z})
        product = evaluate_inequality("PROD_210", {"alpha": alpha, "beta": alpha + 2.0, "z": z})
        w1 = wright(WrightParams(alpha, alpha + 1.0), z).value
        assert product.raw_gap == pytest.approx(w1 * doubling.raw_gap / 2.0, abs=1e-12)

    def test_hypothesis_not_met(self):
        record = evaluate_inequality("W_NONNEG", {"alpha": 1.0, "beta": 2.0, "z": 1.5})
        assert record.status == "hypothesis_not_met"
        assert record.lhs is None and record.margin is None

    def test_two_sided_negative_segment(self):
        record = evaluate_inequality("TS_FW_GS", {"gamma": 0.5, "sigma": 1.5, "z": -0.5})
        assert record.segment == "negative_z"
        record = evaluate_inequality("TS_FW_GS", {"gamma": 0.5, "sigma": 1.5, "z": 0.5})
        assert record.segment == "main"
        assert record.status == "holds"

    def test_two_sided_detail_carries_both_margins(self):
        record = evaluate_inequality("TS_FW_GS", {"gamma": 0.5, "sigma": 1.5, "z": 0.5})
        fields = dict(item.split("=") for item in record.detail.split("; ") if "=" in item)
        lower, upper = float(fields["lower_margin"]), float(fields["upper_margin"])
        assert fields["side"] in ("lower", "upper")
        assert float(fields[f"{fields['side']}_margin"]) == record.margin
        assert record.margin == min(lower, upper)
        assert lower >= 0 and upper >= 0

    def test_eval_error_is_recorded(self, monkeypatch):
        def boom(point):
            raise DomainError("synthetic failure")

        entry = dataclasses.replace(CATALOG[InequalityId.W_NONNEG], evaluate=boom)
        monkeypatch.setitem(CATALOG, InequalityId.W_NONNEG, entry)
        record = evaluate_inequality("W_NONNEG", {"alpha": 1.0, "beta": 2.0, "z": 0.5})
        assert record.status == "eval_error"
        assert "synthetic failure" in record.detail

    def test_roundoff_is_holds(self, monkeypatch):
        entry = dataclasses.replace(CATALOG[InequalityId.W_NONNEG],
                                    evaluate=lambda p: Sides(-1e-15, 0.0, ">="))
        monkeypatch.setitem(CATALOG, InequalityId.W_NONNEG, entry)
        record = evaluate_inequality("W_NONNEG", {"alpha": 1.0, "beta": 2.0, "z": 0.5})
        assert record.status == "holds"
        assert "roundoff" in record.detail

    def test_unknown_id(self):
        with pytest.raises(ConfigError):
            evaluate_inequality("NO_SUCH_ID", {"z": 0.5})

    def test_missing_parameter(self):
        with pytest.raises(ConfigError):
            evaluate_inequality("TURAN_26", {"alpha": 1.5, "z": 0.5})


class TestGridSpec:

    def test_default(self):
        grid = GridSpec.default()
        assert grid.alpha[-1] == pytest.approx(x_star() + 0.1, abs=1e-9)
        assert len(grid.pairs) == 15
        assert all(x + y < 1 for x, y in grid.pairs)

    @pytest.mark.parametrize("kwargs", [{"alpha": []}, {"z": [float("nan")]}, {"z": ["a"]},
                                        {"pairs": [(0.1,)]}])
    def test_malformed(self, kwargs):
        with pytest.raises(ConfigError):
            one_point_grid(**kwargs)

    def test_points_per_domain(self):
        grid = one_point_grid(z_extra=[3.0], z_negative=[-0.5], pairs=[(0.1, 0.2), (0.2, 0.3)])
        assert len(grid.points(CATALOG[InequalityId.W_NONNEG])) == 1
        assert len(grid.points(CATALOG[InequalityId.UB_88])) == 2
        assert len(grid.points(CATALOG[InequalityId.TS_FW_GS])) == 3
        assert len(grid.points(CATALOG[InequalityId.SUPERADD_25])) == 2

    def test_mittag_leffler_sigma_base(self):
        points = one_point_grid(gamma=[0.5], sigma_offset=[2.0]).points(CATALOG[InequalityId.ML_PROD])
        assert points == [{"alpha": 1.0, "beta": 2.0, "sigma": 3.0, "z": 0.5}]


class TestAuditSweep:

    def test_single_point_matches_evaluate(self):
        report = audit_sweep(["DOUBLING_211"], one_point_grid(), n_jobs=1)
        assert len(report.records) == 1
        assert report.records[0] == evaluate_inequality("DOUBLING_211", {"alpha": 1.0, "z": 0.5})

    def test_asserted_entries_hold(self):
        report = audit_sweep(sorted(ASSERTED), SMALL_GRID, n_jobs=1)
        assert report.asserted_violations == []
        assert not any(r.status == "eval_error" for r in report.records)
        for r in report.records:
            if r.status in ("holds", "violated"):
                assert CATALOG[InequalityId(r.id)].hypothesis(r.point)

    def test_suspect_counterexamples_reproduce(self):
        grid = one_point_grid(alpha=[1.0, 1.6], beta_offset=[0.5, 1.0], gamma=[0.5, 1.0],
                              sigma_offset=[1.0, 2.0], z=[0.01, 0.05])
        report = audit_sweep(["LB_777", "LB_888", "ML_EXPLB"], grid, n_jobs=1)
        violations = report.violations("LB_777")
        assert violations
        assert any(r.point["z"] <= 0.05 for r in violations)
        for r in report.violations():
            again = evaluate_inequality(r.id, r.point)
            assert again == r
        assert report.asserted_violations == []

    def test_sorted_and_summarized(self):
        report = audit_sweep(["UB_88", "DOUBLING_211"], SMALL_GRID, n_jobs=1)
        keys = [r.sort_key() for r in report.records]
        assert keys == sorted(keys)
        for row in report.summary:
            counted = [r for r in report.records if r.id == row["id"] and r.segment == row["segment"]]
            assert row["points"] == len(counted)
            assert row["holds"] + row["violated"] + row["hypothesis_not_met"] + row["eval_error"] == len(counted)
        assert report.summary == summarize(report.records)

    def test_parallel_matches_serial(self):
        serial = audit_sweep(["TURAN_GAMMA"], SMALL_GRID, n_jobs=1)
        with parallel_backend("threading"):
            parallel = audit_sweep(["TURAN_GAMMA"], SMALL_GRID, n_jobs=2)
        assert serial.records == parallel.records


class TestReportFiles:

    def test_jsonl_round_trip(self, tmp_path):
        report = audit_sweep(["LB_777"], one_point_grid(z=[0.01, 0.5]), n_jobs=1)
        path = write_records_jsonl(report, tmp_path / "records.jsonl")
        first = json.loads(path.read_text(encoding="utf-8").splitlines()[0])
        assert "_meta" in first
        rows = read_records_jsonl(path)
        assert len(rows) == len(report.records)
        assert list(rows[0]) == RECORD_FIELDS
        assert rows[0]["lhs"] == report.records[0].lhs

    def test_no_header_is_deterministic(self, tmp_path):
        report = audit_sweep(["DOUBLING_211"], SMALL_GRID, n_jobs=1)
        a = write_records_jsonl(report, tmp_path / "a.jsonl", header=False).read_bytes()
        b = write_records_jsonl(report, tmp_path / "b.jsonl", header=False).read_bytes()
        assert a == b
        assert b"_meta" not in a

    def test_summary_csv(self, tmp_path):
        report = audit_sweep(["TS_FW_ALPHA"], SMALL_GRID, n_jobs=1)
        path = write_summary_csv(report, tmp_path / "summary.csv")
        assert path.read_text(encoding="utf-8").startswith("# ")
        frame = pd.read_csv(path, comment="#")
        assert list(frame.columns) == SUMMARY_FIELDS
        assert set(frame["segment"]) == {"main", "negative_z"}

    def test_runner_writes_both_files(self, tmp_path):
        runner = AuditRunner(output_dir=tmp_path / "out", n_jobs=1)
        report = runner.run(["DOUBLING_211"], SMALL_GRID)
        assert (tmp_path / "out" / AuditRunner.RECORDS_FILE).exists()
        assert (tmp_path / "out" / AuditRunner.SUMMARY_FILE).exists()
        assert report.summary[0]["violated"] == 0

    def test_runner_verbose_summary(self, tmp_path, capsys):
        AuditRunner(output_dir=tmp_path, verbose=True, n_jobs=1).run(["LB_777"], SMALL_GRID)
        err = capsys.readouterr().err
        assert "INEQUALITY AUDIT SUMMARY" in err
        assert "LB_777" in err
