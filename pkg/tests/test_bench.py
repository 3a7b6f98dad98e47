"""Metrics arithmetic, report formatting and the experiment protocol shape."""
import json
import math

import numpy as np
import pytest

from bciwheel.bench import (
    COMMAND_TIME_S,
    ExperimentReport,
    SubjectRow,
    TrialOutcome,
    cohort_profiles,
    itr,
    paper_round,
    row_from_outcomes,
    run_calibration,
)


def test_itr_identities():
    for n in (2, 3, 4):
        for t in (1.0, 4.015, 60.0):
            assert itr(n, 1.0 / n, t) == pytest.approx(0.0, abs=1e-12)
            assert itr(n, 1.0, t) == pytest.approx(60.0 * math.log2(n) / t, abs=1e-12)


def test_itr_headline_value():
    assert itr(4, 1.0, 4.015) == pytest.approx(29.888, abs=0.001)


def test_itr_validation():
    with pytest.raises(ValueError):
        itr(1, 1.0, 1.0)
    with pytest.raises(ValueError):
        itr(4, 1.0, 0.0)
    with pytest.raises(ValueError):
        itr(4, 0.1, 1.0)  # below chance
    with pytest.raises(ValueError):
        itr(4, 1.1, 1.0)


def test_paper_round_truncates():
    assert paper_round(96.875) == 96.87
    assert paper_round(86.9766) == 86.97
    assert paper_round(100.0) == 100.0


def test_success_rate_arithmetic_from_printed_counts():
    """Success-rate bookkeeping on a published-style count table: 31/32
    successful commands truncate to 96.87%, and the column average of the
    twelve printed row percentages truncates to 86.97%."""
    assert paper_round(100.0 * 31 / 32) == 96.87
    printed_rows = [96.87, 96.87, 93.75, 93.75, 90.62, 90.62,
                    87.50, 84.37, 81.25, 78.12, 75.00, 75.00]
    assert paper_round(sum(printed_rows) / 12) == 86.97


def test_row_from_outcomes_counts():
    outcomes = (
        [TrialOutcome("LEFT", True)] * 18 + [TrialOutcome("LEFT", False)] * 2
        + [TrialOutcome("RIGHT", True)] * 19 + [TrialOutcome("RIGHT", False)]
        + [TrialOutcome("GO_STOP", True)] * 12
    )
    row = row_from_outcomes("s01", 0.95, outcomes)
    assert (row.intended_l, row.actual_l) == (20, 18)
    assert (row.intended_r, row.actual_r) == (20, 19)
    assert (row.intended_go, row.actual_go) == (12, 12)
    assert row.test_accuracy_pct == pytest.approx(100.0 * 37 / 40)
    assert row.success_rate_pct == pytest.approx(100.0 * 49 / 52)
    assert row.itr_bits_min == pytest.approx(itr(4, 49 / 52, COMMAND_TIME_S))


def sample_report():
    rows = [
        SubjectRow("s01", 96.0, 95.0, 20, 19, 20, 19, 12, 12),
        SubjectRow("s02", 80.0, 75.0, 20, 15, 20, 15, 12, 11),
    ]
    return ExperimentReport(rows)


def test_report_text_layout():
    text = sample_report().to_text()
    lines = text.strip().splitlines()
    assert lines[0].startswith("subject")
    assert lines[1].startswith("s01")
    assert any(line.startswith("AVG") for line in lines)
    assert any(line.startswith("SD") for line in lines)
    assert "4-command alphabet" in text


def test_report_csv_and_json_consistent():
    rep = sample_report()
    csv_lines = rep.to_csv().strip().splitlines()
    assert len(csv_lines) == 1 + 2 + 2  # header, rows, AVG, SD
    doc = rep.to_json_dict()
    assert len(doc["rows"]) == 2
    assert doc["averages"]["success_rate_pct"]["mean"] == pytest.approx(
        np.mean([r.success_rate_pct for r in rep.rows]))
    json.dumps(doc)  # must be serializable


def test_report_outputs_deterministic():
    a, b = sample_report(), sample_report()
    assert a.to_text() == b.to_text()
    assert a.to_csv() == b.to_csv()


def test_cohort_profiles_shape():
    profiles = cohort_profiles(0, 12)
    assert len(profiles) == 12
    assert len({p.id for p in profiles}) == 12
    assert len({p.seed for p in profiles}) == 12
    assert profiles[-1].ssvep_amp == (0.0, 0.0, 0.0)  # pure-noise subject
    again = cohort_profiles(0, 12)
    assert profiles == again  # deterministic in the master seed


def test_calibration_protocol_shape():
    """10 trials x 15 s per class sliced at 4 s / 1 s hop -> 360 rows."""
    profile = cohort_profiles(0, 1, amplitudes=[0.5])[0]
    data = run_calibration(profile, seed=0)
    assert data.x.shape == (360, 18)
    counts = np.bincount(data.y)
    assert counts.tolist() == [120, 120, 120]
    # every trial contributes exactly 12 windows
    for t in set(data.trial.tolist()):
        assert int(np.sum(data.trial == t)) == 12
