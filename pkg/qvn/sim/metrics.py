"""Run metrics recomputed from the trace."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from qvn.sim.events import EventKind, EventTrace

SHUTTLE_KINDS = (EventKind.MUX_SWITCH, EventKind.SHUTTLE_STEP)


def idle_phonons(idle_time_s: float, heating_rate: float) -> float:
    """Motional quanta gained by an uncooled string."""
    if idle_time_s < 0 or heating_rate < 0:
        raise ValueError("idle time and heating rate must be non-negative")
    return idle_time_s * heating_rate


@dataclass
class DacAudit:
    peak: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_dac_usage(trace: EventTrace) -> DacAudit:
    """
    Re-audit concurrent DAC usage per bank from the shuttle events alone.

    Each shuttle event holds ``len(dacs)`` DAC pairs of its bank for ``dur_ns``;
    a sweep over start/end points gives the concurrent total per bank, which must
    stay within the budget recorded on every event active at that moment.
    """
    points: dict[str, list[tuple[int, int, int, int]]] = defaultdict(list)
    for event in trace:
        if event.kind not in SHUTTLE_KINDS:
            continue
        bank = event.detail["bank"]
        used = len(event.detail["dacs"])
        end = event.t_ns + event.detail["dur_ns"]
        # ends sort before starts at the same instant
        points[bank].append((event.t_ns, 1, used, event.detail["budget"]))
        points[bank].append((end, 0, -used, event.detail["budget"]))

    audit = DacAudit()
    for bank, marks in sorted(points.items()):
        active = 0
        peak = 0
        for t_ns, is_start, delta, budget in sorted(marks):
            active += delta
            peak = max(peak, active)
            if is_start and active > budget:
                audit.violations.append(f"bank {bank}: {active} DAC pairs at {t_ns} ns, budget {budget}")
        audit.peak[bank] = peak
    return audit
