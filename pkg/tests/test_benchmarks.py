"""Tests for the benchmark battery, its frozen references and serialization."""

import dataclasses
import io
import json
import math
import random

import mpmath as mp
import pytest

from cpvquad.benchmarks import (
    CALIBRATION_TOL,
    BenchmarkCase,
    BenchmarkRow,
    builtin_problems,
    read_csv,
    reference_values,
    rows_pass,
    run_benchmark,
    write_csv,
    write_json,
)
from cpvquad.error_model import ErrorBudget
from cpvquad.expressions import compile_expression
from cpvquad.oracles import (
    oracle_breakpoints,
    oracle_integrand,
    pv_decomposed,
    pv_exp_closed,
    pv_sin_closed,
    pv_split,
)

EXPECTED_NAMES = (
    "case1",
    "case2",
    "case3",
    "case4",
    "case5",
    "case6",
    "case6b",
    "case7",
    "case8",
)

EXPECTED_TAUS = {
    "case1": 0.5,
    "case2": 0.8,
    "case3": 0.7,
    "case4": 0.99,
    "case5": -0.6,
    "case6": 0.5,
    "case6b": 0.9,
    "case7": 0.9999999,
    "case8": -0.41,
}


def _case(name: str) -> BenchmarkCase:
    return next(c for c in builtin_problems() if c.name == name)


class TestCaseTable:
    def test_names_and_order(self):
        assert tuple(c.name for c in builtin_problems()) == EXPECTED_NAMES

    def test_taus(self):
        for case in builtin_problems():
            assert case.tau == EXPECTED_TAUS[case.name]
            assert case.tau == float(case.tau_text)

    def test_reference_sources(self):
        for case in builtin_problems():
            expected = "closed-form" if case.name in ("case1", "case7") else "oracle-run"
            assert case.reference_source == expected

    def test_error_bounds(self):
        for case in builtin_problems():
            assert case.error_bound == (5e-9 if case.name == "case7" else 5e-12)

    def test_one_family_at_two_singularities(self):
        a, b = _case("case6"), _case("case6b")
        assert a.integrand is b.integrand
        assert a.expression == b.expression
        assert a.tau != b.tau


class TestReferenceIntegrity:
    def test_pair_agreement(self):
        # the two stored decimal routes must agree to 1e-13 relative,
        # tighter than the 1e-12 build guard
        with mp.workdps(40):
            for case in builtin_problems():
                primary = mp.mpf(case.reference_text)
                check = mp.mpf(case.crosscheck_text)
                scale = max(abs(primary), abs(check))
                assert abs(primary - check) <= mp.mpf("1e-13") * scale, case.name

    def test_reference_value_parses_primary(self):
        for case in builtin_problems():
            assert case.reference_value() == float(case.reference_text)

    def test_tampered_pair_is_rejected(self):
        case = _case("case1")
        bad = dataclasses.replace(
            case, crosscheck_text="0.913786432723662428316752218177"
        )
        with pytest.raises(RuntimeError, match="cross-check failed"):
            bad.reference_value()

    def test_reference_values_covers_battery(self):
        values = reference_values()
        assert set(values) == set(EXPECTED_NAMES)
        assert all(math.isfinite(v) for v in values.values())


class TestReferenceRegeneration:
    """Frozen strings recomputed from scratch at reduced precision.

    Full regeneration lives in ``python3 -m cpvquad.oracles``; here a
    cheaper rerun of the closed forms and two fast numeric cases confirms
    the stored digits are reproducible, not copy-paste artifacts.
    """

    def _relative_gap(self, value: mp.mpf, text: str) -> mp.mpf:
        stored = mp.mpf(text)
        return abs(value - stored) / abs(stored)

    def test_closed_forms(self):
        with mp.workdps(40):
            gaps = [
                self._relative_gap(pv_exp_closed("0.5", 40), _case("case1").reference_text),
                self._relative_gap(pv_sin_closed(550, "0.8", 40), _case("case2").reference_text),
                self._relative_gap(pv_exp_closed("0.9999999", 40), _case("case7").reference_text),
            ]
            assert all(gap <= mp.mpf("1e-24") for gap in gaps), gaps

    @pytest.mark.parametrize("name,dps", [("case1", 30), ("case4", 25)])
    def test_numeric_route(self, name, dps):
        case = _case(name)
        value = pv_decomposed(
            oracle_integrand(name),
            case.tau_text,
            oracle_breakpoints(name),
            dps=dps,
            mu_exponent=-40,
        )
        with mp.workdps(40):
            assert self._relative_gap(value, case.reference_text) <= mp.mpf("1e-12")

    def test_split_route(self):
        case = _case("case1")
        value = pv_split(oracle_integrand("case1"), "0.5", (-1.0, 1.0), dps=25)
        with mp.workdps(40):
            assert self._relative_gap(value, case.reference_text) <= mp.mpf("1e-12")


class TestExpressionMirror:
    @pytest.mark.parametrize("case", builtin_problems(), ids=lambda c: c.name)
    def test_parsed_matches_native_within_one_ulp(self, case):
        parsed = compile_expression(case.expression)
        rng = random.Random(1234)
        for _ in range(1000):
            x = rng.uniform(-1.0, 1.0)
            native = case.integrand(x)
            mirrored = parsed(x)
            if native == mirrored:
                continue
            scale = max(abs(native), abs(mirrored))
            assert abs(native - mirrored) <= math.ulp(scale), (case.name, x)


class TestRunBenchmark:
    def test_battery_passes_at_calibration_tolerance(self):
        rows = run_benchmark(tol=CALIBRATION_TOL)
        assert [row.name for row in rows] == list(EXPECTED_NAMES)
        assert all(row.converged for row in rows)
        assert rows_pass(rows)
        for row in rows:
            assert row.abs_error <= row.bound
            assert row.error_estimate >= row.abs_error

    def test_deterministic_apart_from_timing(self):
        first = run_benchmark(tol=CALIBRATION_TOL)
        second = run_benchmark(tol=CALIBRATION_TOL)
        for a, b in zip(first, second):
            assert a.value == b.value
            assert a.abs_error == b.abs_error
            assert a.error_estimate == b.error_estimate
            assert a.evaluations == b.evaluations
            assert a.budget == b.budget

    def test_case_subset(self):
        rows = run_benchmark(tol=1e-12, cases=[_case("case1")])
        assert len(rows) == 1
        assert rows[0].name == "case1"

    def test_bound_scales_with_loose_tolerance(self):
        rows = run_benchmark(tol=1e-10, cases=[_case("case1")])
        assert rows[0].bound == pytest.approx(100.0 * 5e-12, rel=1e-12)

    def test_bound_never_shrinks_below_calibration(self):
        rows = run_benchmark(tol=1e-13, cases=[_case("case1")])
        assert rows[0].bound == 5e-12

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            run_benchmark(tol=0.0)
        with pytest.raises(ValueError):
            run_benchmark(output="table")

    def test_passed_property(self):
        budget = ErrorBudget(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        good = BenchmarkRow(
            name="x", tau=0.0, value=1.0, abs_error=1e-14,
            error_estimate=1e-13, evaluations=1, elapsed_seconds=0.0,
            budget=budget, converged=True, bound=1e-12,
        )
        too_wrong = dataclasses.replace(good, abs_error=1e-11)
        underestimated = dataclasses.replace(good, error_estimate=1e-15)
        assert good.passed
        assert not too_wrong.passed
        assert not underestimated.passed


class TestSerialization:
    def _fast_rows(self):
        return run_benchmark(tol=1e-12, cases=[_case("case1"), _case("case7")])

    def test_csv_roundtrip_is_bit_exact(self):
        rows = self._fast_rows()
        buffer = io.StringIO()
        write_csv(rows, buffer)
        buffer.seek(0)
        parsed = read_csv(buffer)
        assert len(parsed) == len(rows)
        for rec, row in zip(parsed, rows):
            assert rec["name"] == row.name
            assert rec["tau"] == row.tau
            assert rec["value"] == row.value
            assert rec["abs_error"] == row.abs_error
            assert rec["error_estimate"] == row.error_estimate
            assert rec["evaluations"] == row.evaluations
            assert rec["elapsed_seconds"] == row.elapsed_seconds

    def test_csv_header(self):
        rows = self._fast_rows()
        buffer = io.StringIO()
        write_csv(rows, buffer)
        assert buffer.getvalue().splitlines()[0] == (
            "name,tau,value,abs_error,error_estimate,evaluations,elapsed_seconds"
        )

    def test_read_csv_rejects_foreign_header(self):
        with pytest.raises(ValueError, match="header"):
            read_csv(io.StringIO("a,b,c\n1,2,3\n"))

    def test_json_layout_and_exact_values(self):
        rows = self._fast_rows()
        buffer = io.StringIO()
        write_json(rows, buffer)
        parsed = json.loads(buffer.getvalue())
        assert len(parsed) == len(rows)
        for obj, row in zip(parsed, rows):
            assert obj["name"] == row.name
            assert obj["value"] == row.value
            assert obj["abs_error"] == row.abs_error
            assert obj["evaluations"] == row.evaluations
            assert set(obj["budget"]) == {
                "quad_left",
                "quad_right",
                "quad_h",
                "roundoff",
                "log_sensitivity",
                "curvature_sensitivity",
                "cutoff",
            }
            assert obj["budget"]["roundoff"] == row.budget.roundoff

    def test_run_benchmark_streams_csv(self):
        buffer = io.StringIO()
        rows = run_benchmark(
            tol=1e-12, output="csv", cases=[_case("case1")], stream=buffer
        )
        buffer.seek(0)
        parsed = read_csv(buffer)
        assert parsed[0]["value"] == rows[0].value
