"""Trace events and the time-ordered event queue."""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterator

from qvn.utils.units import to_s


class EventKind(str, Enum):
    MUX_SWITCH = "MuxSwitch"
    SHUTTLE_STEP = "ShuttleStep"
    STAGE_ENTER = "StageEnter"
    STAGE_EXIT = "StageExit"
    GATE_1Q = "Gate1Q"
    GATE_2Q = "Gate2Q"
    DETECT_START = "DetectStart"
    DETECT_END = "DetectEnd"
    INIT_DONE = "InitDone"


@dataclass(frozen=True)
class Event:
    t_ns: int
    seq: int
    kind: EventKind
    subject: str
    zone: str
    detail: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def time_s(self) -> float:
        return to_s(self.t_ns)

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {
            "t": self.time_s,
            "seq": self.seq,
            "kind": self.kind.value,
            "subject": self.subject,
            "zone": self.zone,
        }
        if self.detail:
            record["detail"] = self.detail
        return record

    @classmethod
    def from_record(cls, record: dict[str, Any]) -> "Event":
        return cls(
            t_ns=int(round(record["t"] * 1e9)),
            seq=record["seq"],
            kind=EventKind(record["kind"]),
            subject=record["subject"],
            zone=record["zone"],
            detail=record.get("detail", {}),
        )


class EventTrace:
    """
    Recorded events.

    Events may be recorded ahead of the simulation clock (a committed shuttle plan
    lists all its steps at once); ``events`` sorts by time then recording order and
    numbers the result, so sequence numbers are unique and follow the total order.
    """

    def __init__(self) -> None:
        self._raw: list[tuple[int, int, EventKind, str, str, dict[str, Any]]] = []
        self._events: list[Event] | None = None

    def record(self, t_ns: int, kind: EventKind, subject: str, zone: str, **detail: Any) -> None:
        self._raw.append((t_ns, len(self._raw), kind, subject, zone, detail))
        self._events = None

    @classmethod
    def from_events(cls, events: list[Event]) -> "EventTrace":
        trace = cls()
        for event in sorted(events, key=lambda e: (e.t_ns, e.seq)):
            trace.record(event.t_ns, event.kind, event.subject, event.zone, **event.detail)
        return trace

    @property
    def events(self) -> list[Event]:
        if self._events is None:
            ordered = sorted(self._raw, key=lambda raw: (raw[0], raw[1]))
            self._events = [Event(t, seq, kind, subject, zone, detail) for seq, (t, _, kind, subject, zone, detail) in enumerate(ordered)]
        return self._events

    def __len__(self) -> int:
        return len(self._raw)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def of_kind(self, kind: EventKind) -> list[Event]:
        return [event for event in self.events if event.kind == kind]

    @property
    def end_ns(self) -> int:
        return max((event.t_ns + event.detail.get("dur_ns", 0) for event in self.events), default=0)


class EventQueue:
    """Callbacks ordered by (time, insertion order); time never runs backwards."""

    def __init__(self) -> None:
        self._heap: list[tuple[int, int, Callable[[], None]]] = []
        self._counter = itertools.count()
        self.now = 0

    def __len__(self) -> int:
        return len(self._heap)

    def schedule(self, t_ns: int, callback: Callable[[], None]) -> None:
        if t_ns < self.now:
            raise ValueError(f"event at {t_ns} ns is in the past (now {self.now} ns)")
        heapq.heappush(self._heap, (t_ns, next(self._counter), callback))

    def pop(self) -> Callable[[], None]:
        t_ns, _, callback = heapq.heappop(self._heap)
        self.now = t_ns
        return callback
