"""Process-oriented discrete-event kernel: generator processes, delays and FIFO resources."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Generator, NamedTuple, Optional

from qvn.sim.events import EventQueue
from qvn.utils.exceptions import DeadlockDetected


class Delay(NamedTuple):
    ns: int


class Acquire(NamedTuple):
    """Take resources one at a time in the given order."""

    resources: tuple["Resource", ...]


ProcessBody = Generator[Any, None, Any]


@dataclass(eq=False)
class Process:
    name: str
    body: ProcessBody
    done: bool = False


@dataclass(eq=False)
class Resource:
    """Single-holder facility with a FIFO wait queue."""

    name: str
    zone: str = ""
    owner: Optional[Process] = None
    waiters: deque = field(default_factory=deque)
    busy_ns: int = 0
    _since: int = 0

    def take(self, process: Process, now: int) -> None:
        self.owner = process
        self._since = now

    def free(self, now: int) -> None:
        self.busy_ns += now - self._since
        self.owner = None


class Kernel:
    def __init__(self) -> None:
        self.queue = EventQueue()
        self.live: dict[str, Process] = {}

    @property
    def now(self) -> int:
        return self.queue.now

    def spawn(self, name: str, body: ProcessBody) -> Process:
        process = Process(name, body)
        self.live[name] = process
        self.queue.schedule(self.now, partial(self._resume, process))
        return process

    def release(self, resource: Resource) -> None:
        resource.free(self.now)
        if resource.waiters:
            process, remaining = resource.waiters.popleft()
            resource.take(process, self.now)
            self._acquire(process, remaining[1:])

    def run(self) -> int:
        """Drain the queue; returns the final clock in ns."""
        while self.queue:
            self.queue.pop()()
        if self.live:
            raise DeadlockDetected(len(self.live), self.now)
        return self.now

    def _resume(self, process: Process) -> None:
        try:
            command = next(process.body)
        except StopIteration:
            process.done = True
            self.live.pop(process.name, None)
            return
        if isinstance(command, Delay):
            self.queue.schedule(self.now + command.ns, partial(self._resume, process))
        elif isinstance(command, Acquire):
            self._acquire(process, command.resources)
        else:
            raise TypeError(f"process {process.name} yielded {command!r}")

    def _acquire(self, process: Process, remaining: tuple[Resource, ...]) -> None:
        while remaining:
            resource = remaining[0]
            if resource.owner is not None:
                resource.waiters.append((process, remaining))
                return
            resource.take(process, self.now)
            remaining = remaining[1:]
        self.queue.schedule(self.now, partial(self._resume, process))
