import json
import math

import pytest

from tracekit.experiments import (
    THEOREM1,
    THEOREM2,
    ExperimentReport,
    ReportRow,
    emit_report,
    load_goldens,
    theorem1_experiment,
    theorem2_experiment,
    weight_sequence,
)
from tracekit.kloosterman import NotCoprime


def test_weight_sequence_theorem1_examples():
    entries = weight_sequence(3, 5, 4, THEOREM1)
    assert [e.n for e in entries] == [1, 2, 3, 4]
    e4 = entries[-1]
    # target 4 pi 81 / 5, about 203.575; nearest even weight is 204
    assert abs(e4.target - 203.5752) < 1e-3
    assert e4.k_n == 204 and e4.window_ok
    e1 = entries[0]
    assert e1.k_n == 8 and e1.small_weight
    assert all(e.k_n % 2 == 0 for e in entries)
    # the parity repair never leaves the window once k exceeds 8
    assert all(e.window_ok for e in entries)


def test_weight_sequence_theorem2_starts_at_zero():
    entries = weight_sequence(3, 5, 2, THEOREM2)
    assert [e.n for e in entries] == [0, 1, 2]
    assert entries[1].k_n == 68
    assert entries[2].k_n == 612


def test_weight_sequence_growth():
    for p, N in ((3, 5), (5, 6)):
        entries = weight_sequence(p, N, 6 if p == 3 else 4, THEOREM1)
        for e in entries:
            if e.n >= 3:
                assert e.k_n >= p ** (0.9 * e.n)


def test_weight_sequence_validation_and_warning():
    with pytest.raises(NotCoprime):
        weight_sequence(5, 10, 3)
    with pytest.warns(UserWarning):
        weight_sequence(3, 8, 2)


def test_theorem1_report_passes_and_audits():
    report = theorem1_experiment(3, 5, 5)
    assert len(report.rows) == 5  # no silently dropped rows
    skipped = [r for r in report.rows if not r.asserted]
    assert {r.k_n for r in skipped} == {8, 24}
    assert all(r.reason for r in skipped)
    assert report.all_asserted_pass()
    assert report.audit()
    goldens = load_goldens()
    for r in report.rows:
        if r.asserted:
            floor = (abs(r.delta_mid) - r.delta_rad) * (r.k_n - 1) ** (1 / 3)
            assert floor >= goldens["thm1_floor_c0"]


def test_theorem1_max_k_cap_produces_reasoned_skip():
    report = theorem1_experiment(3, 5, 6, max_k=300)
    capped = [r for r in report.rows if "max-k" in r.reason]
    assert {r.k_n for r in capped} == {612, 1834}
    assert report.all_asserted_pass()


def test_theorem2_report_emits_both_normalizations():
    report = theorem2_experiment(3, 5, 2)
    assert report.all_asserted_pass() and report.audit()
    for r in report.rows:
        if r.asserted:
            assert "stmt=" in r.reason and "proof=" in r.reason


def test_csv_shape_and_determinism():
    report = theorem1_experiment(3, 5, 4)
    text = report.to_csv()
    lines = text.splitlines()
    assert lines[0] == "n,k_n,window_ok,delta_mid,delta_rad,tail_bound,proxy,bound,pass,reason"
    assert len(lines) == 5
    again = theorem1_experiment(3, 5, 4)
    assert again.to_csv() == text  # byte-identical (timestamp lives in JSON metadata only)


def test_empty_report_is_header_only():
    empty = ExperimentReport(THEOREM1, [], {"p": 3})
    assert empty.to_csv().splitlines() == [
        "n,k_n,window_ok,delta_mid,delta_rad,tail_bound,proxy,bound,pass,reason"]
    assert "no plottable rows" in empty.to_svg()


def test_json_round_trip_identity():
    report = theorem1_experiment(3, 5, 4)
    clone = ExperimentReport.from_json(report.to_json())
    assert clone.mode == report.mode
    assert clone.metadata == report.metadata
    assert clone.rows == report.rows


def test_emit_report_formats(tmp_path):
    report = theorem1_experiment(3, 5, 3)
    for fmt, probe in (("csv", "n,k_n"), ("json", '"rows"'), ("svg", "<svg")):
        path = tmp_path / f"report.{fmt}"
        emit_report(report, fmt, str(path))
        assert probe in path.read_text()
    with pytest.raises(ValueError):
        emit_report(report, "pdf", "-")
    with pytest.raises(OSError):
        emit_report(report, "csv", str(tmp_path / "missing" / "deep" / "x.csv"))


def test_audit_detects_tampering():
    report = theorem1_experiment(3, 5, 4)
    assert report.audit()
    for row in report.rows:
        if row.asserted:
            row.passed = not row.passed
            break
    assert not report.audit()


def test_svg_contains_series():
    report = theorem1_experiment(3, 5, 4)
    svg = report.to_svg()
    assert svg.count("<polyline") == 2
    assert "proxy" in svg and "bound" in svg
