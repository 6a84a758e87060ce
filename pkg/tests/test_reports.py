import csv
import io
import json
import math

from dlcbounds.reports import BoundReport, all_hold, check, to_csv, to_json_lines, to_text


def test_slack_and_tolerance():
    r = check("x", 1.0, 1.0 - 1e-11)
    assert r.holds and r.slack < 0
    assert not check("x", 1.0, 1.0 - 1e-8).holds
    assert check("x", 1.0, 1.0 - 1e-8, tail=1e-9, tail_factor=10).holds


def test_skipped_rows_never_fail():
    s = BoundReport.skip("y", "because")
    assert s.holds and all_hold([s])
    assert not all_hold([s, check("z", 2.0, 1.0)])


def test_csv_column_order():
    reps = [check("a", 0.0, 1.0, zeta=1.0, beta=2.0), BoundReport.skip("b", "why", {"alpha": 3.0})]
    rows = list(csv.reader(io.StringIO(to_csv(reps))))
    assert rows[0] == ["bound_id", "lhs", "rhs", "slack", "holds", "tolerance", "alpha", "beta", "zeta", "skipped"]
    assert rows[1][0] == "a" and rows[1][4] == "true"
    assert rows[2][-1] == "why"


def test_json_lines_are_valid():
    reps = [check("a", 0.0, math.inf), BoundReport.skip("b", "why")]
    lines = [json.loads(l) for l in to_json_lines(reps).splitlines()]
    assert lines[0]["rhs"] == "inf" and lines[1]["lhs"] is None
    assert lines[1]["skipped"] == "why"


def test_text_marks_failures():
    out = to_text([check("bad", 2.0, 1.0)])
    assert "FAIL" in out
