"""Trace files: JSON lines, CSV and an SVG timeline."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import svgwrite

from logic.logging_config import configured_logger as logger
from qvn.sim.events import Event, EventKind, EventTrace
from qvn.utils.exceptions import IoError, ParseError
from qvn.utils.file_handler import FileHandler

CSV_COLUMNS = ["t", "seq", "kind", "subject", "zone", "detail"]
LANE_HEIGHT = 18
LANE_GAP = 4
LABEL_WIDTH = 140
PLOT_WIDTH = 1000
SPAN_KINDS = {
    EventKind.STAGE_ENTER: EventKind.STAGE_EXIT,
    EventKind.DETECT_START: EventKind.DETECT_END,
}


def to_jsonl(trace: EventTrace) -> str:
    return "".join(json.dumps(event.to_record(), sort_keys=False) + "\n" for event in trace)


def read_jsonl(path: str | Path) -> EventTrace:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise IoError(f"Cannot read {path}: {e}", path=str(path)) from e
    events = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            events.append(Event.from_record(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as e:
            raise ParseError(f"{path}:{number}: not a trace event ({e})", path=str(path)) from e
    return EventTrace.from_events(events)


def _write_csv(trace: EventTrace, handle) -> None:
    writer = csv.writer(handle)
    writer.writerow(CSV_COLUMNS)
    for event in trace:
        record = event.to_record()
        writer.writerow(
            [record["t"], record["seq"], record["kind"], record["subject"], record["zone"], json.dumps(event.detail) if event.detail else ""]
        )


def _spans(trace: EventTrace) -> list[tuple[str, int, int, str, str]]:
    """(lane, start_ns, end_ns, css class, label) for every closed stage or detection span."""
    open_spans: dict[tuple, int] = {}
    spans = []
    for event in trace:
        if event.kind in SPAN_KINDS:
            stage = event.detail.get("stage", "")
            open_spans[(event.zone, stage, event.subject, SPAN_KINDS[event.kind])] = event.t_ns
            continue
        for begin, end in SPAN_KINDS.items():
            if event.kind != end:
                continue
            stage = event.detail.get("stage", "")
            key = (event.zone, stage, event.subject, end)
            if key in open_spans:
                lane = f"{event.zone}/{stage}" if stage != "" else event.zone
                css = "detect" if end == EventKind.DETECT_END else "stage"
                if css == "detect":
                    lane = f"{event.zone}/detect"
                spans.append((lane, open_spans.pop(key), event.t_ns, css, event.subject))
    return spans


def _lane_order(lane: str) -> tuple:
    zone, _, stage = lane.partition("/")
    return (zone, int(stage) if stage.isdigit() else -1, stage)


def svg_timeline(trace: EventTrace) -> svgwrite.Drawing:
    """
    Static Gantt chart of stage and detection occupancy.

    One lane per QALU sub-stage and per detection sub-zone, grouped by zone.
    """
    spans = _spans(trace)
    lanes = sorted({span[0] for span in spans}, key=_lane_order)
    end_ns = max((span[2] for span in spans), default=0) or 1
    height = len(lanes) * (LANE_HEIGHT + LANE_GAP) + 30
    drawing = svgwrite.Drawing(size=(LABEL_WIDTH + PLOT_WIDTH + 20, height))
    drawing.add(drawing.style(".stage{fill:#4c78a8}.detect{fill:#f58518}.lane{fill:#f2f2f2}text{font:11px sans-serif}"))
    rows = {}
    for number, lane in enumerate(lanes):
        y = 10 + number * (LANE_HEIGHT + LANE_GAP)
        rows[lane] = y
        drawing.add(drawing.rect((LABEL_WIDTH, y), (PLOT_WIDTH, LANE_HEIGHT), class_="lane"))
        drawing.add(drawing.text(lane, insert=(4, y + LANE_HEIGHT - 5)))
    scale = PLOT_WIDTH / end_ns
    for lane, start, stop, css, label in spans:
        rect = drawing.rect(
            (LABEL_WIDTH + start * scale, rows[lane]), (max((stop - start) * scale, 0.5), LANE_HEIGHT), class_=css
        )
        rect.set_desc(title=f"{label} {start}-{stop} ns")
        drawing.add(rect)
    drawing.add(drawing.text(f"0 .. {end_ns / 1e3:g} us", insert=(LABEL_WIDTH, height - 6)))
    return drawing


def emit_trace(trace: EventTrace, path: str | Path, fmt: str = "jsonl") -> Path:
    """
    Write a trace in one of the supported formats.

    Raises:
        ValueError: Unknown format
        IoError: The file cannot be written
    """
    if not FileHandler.is_supported_format(fmt):
        raise ValueError(f"unsupported trace format {fmt}")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "jsonl":
            path.write_text(to_jsonl(trace), encoding="utf-8")
        elif fmt == "csv":
            with path.open("w", newline="", encoding="utf-8") as handle:
                _write_csv(trace, handle)
        else:
            svg_timeline(trace).saveas(str(path), pretty=True)
    except OSError as e:
        logger.error(f"Cannot write trace {path}: {e}")
        raise IoError(f"Cannot write trace {path}: {e}", path=str(path)) from e
    logger.info(f"Wrote {len(trace)} events to {path} ({fmt})")
    return path
