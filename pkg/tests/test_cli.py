"""Tests for plan loading, the check runners and report emission."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from tpcert.cli import PlanError, emit_report, load_plan, main, run_plan

PLANS = Path(__file__).resolve().parent.parent / "plans"


def write_plan(tmp_path, text, name="plan.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


MINIMAL = """\
name: mini
vars: [q]
triangle:
  kind: row-shift
  c0: "1"
  c1: "1"
  depth: 4
checks:
  - kind: triangle-build
  - kind: hankel-tp
    size: 2
    order: 2
"""


def test_load_and_run_minimal(tmp_path):
    plan = load_plan(write_plan(tmp_path, MINIMAL))
    assert plan.name == "mini"
    report = run_plan(plan)
    assert report.status == "pass"
    assert [c["status"] for c in report.checks] == ["pass", "pass"]


def test_reserved_variable_rejected(tmp_path):
    bad = MINIMAL.replace("vars: [q]", "vars: [n, q]")
    with pytest.raises(PlanError):
        load_plan(write_plan(tmp_path, bad))


def test_malformed_polynomial_reports_location(tmp_path):
    bad = MINIMAL.replace('c0: "1"', 'c0: "1 + *q"')
    with pytest.raises(PlanError) as err:
        load_plan(write_plan(tmp_path, bad))
    assert "column" in str(err.value)
    assert "c0" in str(err.value)


def test_malformed_yaml_reports_location(tmp_path):
    with pytest.raises(PlanError) as err:
        load_plan(write_plan(tmp_path, "a:\n  - b\n c: d\n"))
    assert "line" in str(err.value)


def test_unknown_check_kind_is_error(tmp_path):
    doc = MINIMAL + "  - kind: no-such-check\n"
    report = run_plan(load_plan(write_plan(tmp_path, doc)))
    assert report.status == "fail"
    assert report.checks[-1]["status"] == "error"


def test_error_aborts_remaining_checks(tmp_path):
    # a walk-only check on a row-shift spec is an error (not a fail); the
    # trailing triangle-build must not run
    doc = MINIMAL + "  - kind: tridiagonal-criteria\n    upto: 2\n" + \
        "  - kind: triangle-build\n"
    report = run_plan(load_plan(write_plan(tmp_path, doc)))
    assert report.checks[-1]["status"] == "error"
    assert len(report.checks) == 3


def test_specialization_override(tmp_path):
    doc = """\
name: special
vars: [q, a0]
triangle:
  kind: row-shift
  c0: "a0*(n - 1)"
  c1: "1"
  depth: 4
checks:
  - kind: row-gf
    at: {q: 1}
    values: ["1", "1", "2", "6", "24"]
"""
    plan = load_plan(write_plan(tmp_path, doc), {"specialize": {"a0": "1"}})
    assert run_plan(plan).status == "pass"
    plan2 = load_plan(write_plan(tmp_path, doc), {"specialize": {"a0": "2"}})
    assert run_plan(plan2).status == "fail"


def test_empty_plan_passes(tmp_path):
    doc = MINIMAL.split("checks:")[0] + "checks: []\n"
    report = run_plan(load_plan(write_plan(tmp_path, doc)))
    assert report.status == "pass" and report.checks == []


def test_depth_override(tmp_path):
    plan = load_plan(write_plan(tmp_path, MINIMAL), {"depth": 6})
    assert plan.depth == 6
    report = run_plan(plan)
    assert report.checks[0]["detail"]["depth"] == 6


def test_specialize_unknown_variable(tmp_path):
    with pytest.raises(PlanError):
        load_plan(write_plan(tmp_path, MINIMAL), {"specialize": {"zz": "1"}})


def test_depth_inconsistency_rejected_at_load(tmp_path):
    doc = MINIMAL + "  - kind: hankel-tp\n    size: 5\n    order: 2\n"
    with pytest.raises(PlanError) as err:
        load_plan(write_plan(tmp_path, doc))  # depth 4 < 2*(5-1)
    assert "depth" in str(err.value)
    doc2 = MINIMAL + "  - kind: k-lcx\n    k: 3\n"
    with pytest.raises(PlanError):
        load_plan(write_plan(tmp_path, doc2))


def test_report_determinism(tmp_path):
    plan_path = write_plan(tmp_path, MINIMAL)
    reports = []
    for _ in range(2):
        report = run_plan(load_plan(plan_path))
        report.timings = {}  # timings are excluded from the hashed body
        reports.append(emit_report([report], "json"))
    assert reports[0] == reports[1]
    parsed = json.loads(reports[0])
    assert parsed["status"] == "pass"


def test_text_format_summary(tmp_path):
    report = run_plan(load_plan(write_plan(tmp_path, MINIMAL)))
    text = emit_report([report], "text")
    assert "plan mini: PASS" in text
    assert "2 check(s)" in text


def test_golden_regen_and_compare(tmp_path):
    doc = MINIMAL.replace(
        "  - kind: triangle-build",
        "  - kind: triangle-build\n    golden: mini.golden.tsv",
    )
    plan_path = write_plan(tmp_path, doc)
    # first regenerate, then compare against the regenerated file
    assert main(["verify", str(plan_path), "--golden-dir", str(tmp_path)]) == 0
    assert (tmp_path / "mini.golden.tsv").exists()
    assert main(["verify", str(plan_path)]) == 0
    # corrupt the golden file: comparison must fail
    golden = tmp_path / "mini.golden.tsv"
    golden.write_text(golden.read_text().replace("2", "3"))
    assert main(["verify", str(plan_path)]) == 1


class TestShippedPlans:
    def test_factorial_plan_passes(self):
        assert main(["verify", str(PLANS / "factorial.yaml")]) == 0

    def test_negative_plan_fails_with_witness(self, capsys):
        rc = main(["verify", str(PLANS / "peak-interior-negative.yaml"),
                   "--format", "json"])
        assert rc == 1
        out = json.loads(capsys.readouterr().out)
        lcx = [c for p in out["plans"] for c in p["checks"] if c["kind"] == "k-lcx"]
        assert lcx[0]["status"] == "fail"
        assert "-4*q^2" in lcx[0]["detail"]["witness"]

    def test_batch_mixes_pass_and_fail(self):
        rc = main([
            "verify",
            str(PLANS / "factorial.yaml"),
            str(PLANS / "peak-interior-negative.yaml"),
        ])
        assert rc == 1

    def test_full_batch_summary(self, capsys):
        # the whole shipped plan set: only the by-design negative plan fails
        plans = sorted(PLANS.glob("*.yaml"))
        assert len(plans) == 13
        rc = main(["verify"] + [str(p) for p in plans])
        out = capsys.readouterr().out
        assert rc == 1
        assert "13 plan(s)" in out
        assert out.count("FAIL") == 1
        assert "peak-interior-negative: FAIL" in out

    def test_missing_plan_is_load_error(self, capsys):
        rc = main(["verify", str(PLANS / "does-not-exist.yaml")])
        assert rc == 2

    def test_jobs_flag(self):
        assert main(["verify", str(PLANS / "eulerian.yaml"), "--jobs", "2"]) == 0

    def test_hankel_overrides(self, capsys):
        rc = main(["verify", str(PLANS / "eulerian.yaml"),
                   "--hankel-size", "3", "--tp-order", "2", "--format", "json"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        tp = [c for p in out["plans"] for c in p["checks"] if c["kind"] == "hankel-tp"]
        assert tp[0]["detail"]["truncation"] == [3, 3]
        assert tp[0]["detail"]["order"] == 2

    def test_cli_entry_point_subprocess(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tpcert.cli", "verify",
             str(PLANS / "bell-walk.yaml")],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "bell-walk: PASS" in proc.stdout
