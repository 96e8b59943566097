from qvn.sim.engine import Simulator, run
from qvn.sim.events import Event, EventKind, EventQueue, EventTrace
from qvn.sim.kernel import Acquire, Delay, Kernel, Resource
from qvn.sim.metrics import DacAudit, audit_dac_usage, idle_phonons
from qvn.sim.trace import emit_trace, read_jsonl, svg_timeline, to_jsonl

__all__ = [
    "Acquire",
    "DacAudit",
    "Delay",
    "Event",
    "EventKind",
    "EventQueue",
    "EventTrace",
    "Kernel",
    "Resource",
    "Simulator",
    "audit_dac_usage",
    "emit_trace",
    "idle_phonons",
    "read_jsonl",
    "run",
    "svg_timeline",
    "to_jsonl",
]
