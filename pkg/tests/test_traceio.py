import csv
import io

import pytest
from hypothesis import given, strategies as st

from roamtrack.evaluator import EvaluationReport
from roamtrack.model import VisitEvent, VisitKind
from roamtrack.traceio import (REPORT_HEADER, TraceParseError, fmt_pct, format_trace,
                               group_by_node, parse_line, read_column_trace, read_trace,
                               write_report, write_series)


def test_parse_visit_line():
    e = parse_line("mn45,FSA,1000,2793")
    assert e == VisitEvent("mn45", "FSA", 1000, 2793)
    assert e.end == 3793


def test_parse_rejection_line():
    e = parse_line("mn1,AP1,50,0,rej")
    assert e.kind is VisitKind.REJECTION and e.duration == 0


def test_parse_attractiveness():
    assert parse_line("n,A,0,10,0.25").attractiveness == 0.25
    assert parse_line("n,A,0,10,visit,0.5").attractiveness == 0.5
    assert parse_line("n,A,0,10,,0.5").kind is VisitKind.COMPLETED


@pytest.mark.parametrize("line", [
    "n,A,0", "n,A,x,10", "n,A,0,-1", "n,,0,10", "n,A,0,10,bogus", "n,A,0,10,visit,2.0",
    "n,A,0,10,visit,abc", "n,A,-5,10", "a,b,c,d,e,f,g",
])
def test_parse_rejects(line):
    with pytest.raises(TraceParseError):
        parse_line(line, 3)


def test_read_sorts_by_start_then_network():
    text = "n,B,10,5\nn,A,10,5\n# comment\n\nn,C,0,5\n"
    events, issues = read_trace(text)
    assert [(e.start, e.network) for e in events] == [(0, "C"), (10, "A"), (10, "B")]
    assert issues == []


def test_strict_vs_lenient():
    text = "n,A,0,10\nn,A,oops,10\nn,B,20,10\n"
    with pytest.raises(TraceParseError) as ei:
        read_trace(text)
    assert ei.value.lineno == 2
    events, issues = read_trace(text, strict=False)
    assert len(events) == 2 and issues[0].lineno == 2


def test_bytes_source():
    assert read_trace(b"n,A,0,10\n")[0][0].network == "A"


_name = st.text("abcXYZ0123_-.", min_size=1, max_size=6)
_event = st.builds(
    VisitEvent, node=_name, network=_name, start=st.integers(0, 10**9),
    duration=st.integers(0, 10**6), kind=st.sampled_from(list(VisitKind)),
    attractiveness=st.none() | st.floats(0, 1),
)


@given(st.lists(_event, max_size=30))
def test_round_trip(events):
    events = sorted(events, key=lambda e: (e.start, e.network))
    back, _ = read_trace(format_trace(events))
    assert sorted(back, key=repr) == sorted(events, key=repr)


def test_group_by_node_preserves_order():
    evs = parse_line("a,X,0,1"), parse_line("b,X,1,1"), parse_line("a,Y,2,1")
    g = group_by_node(evs)
    assert [e.network for e in g["a"]] == ["X", "Y"]


def _report(node, err=20.0, tth=None):
    return EvaluationReport(node=node, num_networks=7, num_waypoints=55,
                            path_features="1 AP accounts for 40% of visits",
                            avg_visit_s=2793.0, total_duration_s=621978.0,
                            error_margin_pct=err, tth_mae_s=tth)


def test_report_row_values():
    rows = list(csv.reader(io.StringIO(write_report([_report("mn45")]))))
    assert tuple(rows[0]) == REPORT_HEADER
    assert rows[1][:3] == ["mn45", "7", "55"]
    assert rows[1][4:7] == ["2793", "621978", "20"]
    assert rows[1][7] == ""


def test_empty_report_is_header_only():
    assert write_report([]) == ",".join(REPORT_HEADER) + "\n"


def test_report_rows_sorted():
    out = write_report([_report("mn90", 54.0), _report("mn34", 7.142857)])
    rows = list(csv.reader(io.StringIO(out)))
    assert [r[0] for r in rows[1:]] == ["mn34", "mn90"]
    assert rows[1][6] == "7.14"


def test_table_format():
    out = write_report([_report("mn45", tth=123.4)], "table")
    lines = out.splitlines()
    assert lines[0].startswith("# error_margin_pct")
    assert "2793 / 47" in lines[3] and "621978 / 7" in lines[3]
    assert lines[3].split()[-1] == "123"
    with pytest.raises(ValueError):
        write_report([], "xml")


def test_fmt_pct():
    assert fmt_pct(20.0) == "20" and fmt_pct(7.142857) == "7.14" and fmt_pct(0.0) == "0"


def test_write_series():
    assert write_series(("x", "y"), [(0.5, 1)]) == "x,y\n0.5,1\n"


def test_column_converter():
    lines = ["ap start dur", "FSA 100.4 2792.6", "# note", "LVL 10 5"]
    evs = read_column_trace(lines, "mn45", 0, 1, 2, skip_header=True)
    assert [(e.network, e.start, e.duration) for e in evs] == [("LVL", 10, 5), ("FSA", 100, 2793)]
    assert all(e.node == "mn45" for e in evs)


def test_column_converter_errors():
    with pytest.raises(TraceParseError) as ei:
        read_column_trace(["A;1;2", "B;x;2"], "n", 0, 1, 2, delimiter=";")
    assert ei.value.lineno == 2
    with pytest.raises(TraceParseError):
        read_column_trace(["A 1"], "n", 0, 1, 2)
