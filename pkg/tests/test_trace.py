"""Tests for trace serialization."""
import csv
import json

import pytest

from qvn.sim import EventKind, EventTrace, emit_trace, read_jsonl, svg_timeline, to_jsonl
from qvn.utils.exceptions import ParseError


def sample_trace() -> EventTrace:
    trace = EventTrace()
    trace.record(0, EventKind.STAGE_ENTER, "mem:0,0:0", "qalu", stage=0, stage_kind="Combine", op=0)
    trace.record(1500, EventKind.STAGE_EXIT, "mem:0,0:0", "qalu", stage=0)
    trace.record(1500, EventKind.STAGE_ENTER, "mem:0,0:0", "qalu", stage=1, stage_kind="QIP", op=0)
    trace.record(1500, EventKind.GATE_2Q, "mem:0,0:0", "qalu", op=0, name="cx", dur_ns=1000)
    trace.record(4000, EventKind.STAGE_EXIT, "mem:0,0:0", "qalu", stage=1)
    trace.record(5000, EventKind.DETECT_START, "mem:0,0:1", "det", op=1, dur_ns=2000)
    trace.record(7000, EventKind.DETECT_END, "mem:0,0:1", "det", op=1)
    # recorded late, sorts first
    trace.record(10, EventKind.SHUTTLE_STEP, "mem:0,0:1", "mem", bank="mem", budget=4, dacs=[0, 1, 2], dur_ns=5, plan="linear")
    return trace


def test_events_are_ordered():
    """Test that events sort by time and are renumbered in that order."""
    events = sample_trace().events

    assert [event.t_ns for event in events] == sorted(event.t_ns for event in events)
    assert [event.seq for event in events] == list(range(8))
    assert events[1].kind == EventKind.SHUTTLE_STEP
    assert sample_trace().end_ns == 7000


def test_jsonl_records():
    """Test one JSON object per line with seconds as the time unit."""
    lines = to_jsonl(sample_trace()).splitlines()
    first = json.loads(lines[0])
    gate = json.loads(lines[4])

    assert len(lines) == 8
    assert list(first) == ["t", "seq", "kind", "subject", "zone", "detail"]
    assert gate["kind"] == "Gate2Q"
    assert gate["t"] == pytest.approx(1.5e-6)
    assert gate["detail"]["name"] == "cx"


def test_jsonl_round_trip(tmp_path):
    """Test that a written trace reads back unchanged."""
    path = emit_trace(sample_trace(), tmp_path / "trace.jsonl")

    assert to_jsonl(read_jsonl(path)) == to_jsonl(sample_trace())


def test_read_jsonl_rejects_garbage(tmp_path):
    """Test that a line without event fields is a parse error."""
    path = tmp_path / "bad.jsonl"
    path.write_text('{"t": 0.0}\n', encoding="utf-8")

    with pytest.raises(ParseError) as excinfo:
        read_jsonl(path)

    assert excinfo.value.path == str(path)


def test_csv(tmp_path):
    """Test a header row and one row per event."""
    path = emit_trace(sample_trace(), tmp_path / "trace.csv", fmt="csv")

    with path.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))

    assert rows[0] == ["t", "seq", "kind", "subject", "zone", "detail"]
    assert len(rows) == 9
    assert json.loads(rows[3][5]) == {"stage": 0}


def test_svg_timeline_lanes(tmp_path):
    """Test one lane per QALU stage and per detection zone."""
    drawing = svg_timeline(sample_trace())
    path = emit_trace(sample_trace(), tmp_path / "timeline.svg", fmt="svg_timeline")
    text = path.read_text(encoding="utf-8")

    assert "qalu/0" in text
    assert "qalu/1" in text
    assert "det/detect" in text
    assert text.count('class="stage"') == 2
    assert text.count('class="detect"') == 1
    assert drawing.tostring().startswith("<svg")


def test_unknown_format(tmp_path):
    """Test that only the supported formats are written."""
    with pytest.raises(ValueError):
        emit_trace(sample_trace(), tmp_path / "trace.xml", fmt="xml")
