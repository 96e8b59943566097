"""Deterministic execution of a circuit on a trap layout."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from logic.logging_config import configured_logger as logger
from model.dtos import MachineParams, SimMetrics, StageKind
from qvn.core.ions import Circuit, CircuitOp, GateKind
from qvn.core.layout import Track, TrapLayout, ZoneKind
from qvn.core.loader import auto_qubit_map, check_capacity
from qvn.pipeline.detection import ghz_generation_time, initialization_time
from qvn.pipeline.stages import expand_stages, pipeline_metrics, resolve_pipeline
from qvn.shuttle.memory import MemoryState, access_memory_cell, insertion_location, return_to_memory_cell
from qvn.shuttle.plan import MovePlan
from qvn.shuttle.planner import plan_linear_move, traverse_junction, window_width
from qvn.sim.events import EventKind, EventTrace
from qvn.sim.kernel import Acquire, Delay, Kernel, ProcessBody, Resource
from qvn.sim.metrics import audit_dac_usage, idle_phonons
from qvn.utils.exceptions import CapacityExceeded, DeadlockDetected, ValidationError
from qvn.utils.units import per_second, to_ns, to_s

GATE_EVENTS = {GateKind.SINGLE_QUBIT: EventKind.GATE_1Q, GateKind.TWO_QUBIT: EventKind.GATE_2Q}
LOOKAHEAD = 1

Well = tuple[int, int]


@dataclass
class StringState:
    id: str
    zone_id: str
    cell: tuple[int, int]
    location: Optional[Well] = None
    # track of the station whose process region holds the string
    station: Optional[int] = None
    busy: bool = False
    idle_since_ns: int = 0
    idle_ns: int = 0


@dataclass(eq=False)
class Station:
    """
    A QALU or detection track seen from the transport network.

    Strings enter and leave the process region through the port well next to the
    track's junction. The hold well, one control window further in, keeps a string the
    next operation needs without blocking the port.
    """

    zone_id: str
    track: Track
    port: int
    hold: Optional[int]
    gate: Resource
    held_by: Optional[str] = None

    @property
    def port_well(self) -> Well:
        return self.track.id, self.port

    @property
    def hold_well(self) -> Optional[Well]:
        return None if self.hold is None else (self.track.id, self.hold)


def build_station(layout: TrapLayout, track: Track, params: MachineParams) -> Station:
    ends = [junction.end_of(track.id) for junction in layout.junctions if track.id in junction.arm_track_ids]
    end = ends[0] if ends else "head"
    port = track.park_index(end)
    hold = port + window_width(params) * (1 if end == "head" else -1)
    if not 1 <= hold <= track.n_pairs - 2:
        hold = None
    return Station(track.zone_id, track, port, hold, Resource(f"well:{track.id}:{port}", track.zone_id))


class Simulator:
    """
    Greedy in-order scheduler over a process-oriented event kernel.

    Every circuit operation is a process: it reserves the first stage of its station,
    fetches its operand strings from memory (or from the hold well where the previous
    operation left them) into the station through its port, runs the QALU pipeline or a
    detection pass, then leaves through the port again. A string the next operation uses
    waits on the hold well when it is free; every other string is written back.

    Resources are always taken in the order first stage, port wells, DAC banks and
    finally the crossing of a junction, so the wait graph stays acyclic. Each transit
    holds the DAC banks of every track it crosses, and every plan is checked against
    the current well occupancy.
    """

    def __init__(self, layout: TrapLayout, circuit: Circuit, params: MachineParams, seed: int = 0):
        self.layout = layout
        self.params = params
        self.circuit = circuit if circuit.qubit_map or not circuit.ops else Circuit(
            circuit.ops, auto_qubit_map(circuit.n_logical, layout, params)
        )
        check_capacity(self.circuit, layout, params)
        self.rng = np.random.default_rng(seed)
        self.kernel = Kernel()
        self.trace = EventTrace()
        self.dac_switches = 0
        self.placements: list[tuple[int, str, Optional[Well]]] = []

        self.pipeline = resolve_pipeline(params)
        self.stages = expand_stages(self.pipeline)
        qalus = layout.zones_of_kind(ZoneKind.QALU)
        self.qalu_zone = qalus[0].id if qalus else ""
        self.qalu_track = layout.qalu_track()
        self.stage_resources = [Resource(f"stage:{stage.index}", self.qalu_zone) for stage in self.stages]

        self.detection_zones = [zone.id for zone in layout.zones_of_kind(ZoneKind.DETECTION) if layout.tracks_in_zone(zone.id)]
        self.detection_resources = {
            zone: (Resource(f"{zone}:ghz", zone), Resource(f"{zone}:detect", zone)) for zone in self.detection_zones
        }
        self.detection_load = {zone: 0 for zone in self.detection_zones}
        self.banks: dict[str, Resource] = {}

        self.stations: dict[int, Station] = {}
        station_tracks = [self.qalu_track] + [layout.tracks_in_zone(zone)[0] for zone in self.detection_zones]
        for track in station_tracks:
            if track is not None:
                self.stations[track.id] = build_station(layout, track, params)

        self.strings: dict[str, StringState] = {}
        residents: dict[tuple[str, tuple[int, int]], list[str]] = {}
        for ref in sorted(set(self.circuit.qubit_map.values()), key=lambda r: r.string_id):
            self.strings[ref.string_id] = StringState(ref.string_id, ref.zone_id, ref.cell)
            residents.setdefault((ref.zone_id, ref.cell), []).append(ref.string_id)
        self.memory = MemoryState(residents=residents)

        self.unissued = list(range(len(self.circuit.ops)))
        self._check_reachable()

    # setup

    def _check_reachable(self) -> None:
        kinds = {op.kind for op in self.circuit.ops}
        if kinds & set(GATE_EVENTS) and self.qalu_track is None:
            raise ValidationError("circuit has gates but the layout has no QALU track", invariant="qalu present")
        if kinds & {GateKind.MEASURE, GateKind.INIT} and not self.detection_zones:
            raise ValidationError("circuit measures but the layout has no detection zone", invariant="detection present")

    def operand_strings(self, op: CircuitOp) -> list[str]:
        return sorted({self.circuit.string_of(q) for q in op.qubits})

    def bank(self, bank_id: str) -> Resource:
        if bank_id not in self.banks:
            self.banks[bank_id] = Resource(f"bank:{bank_id}")
        return self.banks[bank_id]

    # scheduling

    def dispatch(self) -> None:
        """Issue operations in circuit order, looking ``LOOKAHEAD`` ops past a blocked one."""
        issued = True
        while issued:
            issued = False
            blocked: set[str] = set()
            for index in self.unissued[: LOOKAHEAD + 1]:
                strings = self.operand_strings(self.circuit.ops[index])
                if blocked.isdisjoint(strings) and not any(self.strings[s].busy for s in strings):
                    for sid in strings:
                        self.strings[sid].busy = True
                    self.unissued.remove(index)
                    self.kernel.spawn(f"op{index}", self._operation(index))
                    issued = True
                    break
                blocked.update(strings)

    def run(self) -> tuple[EventTrace, SimMetrics]:
        self.dispatch()
        try:
            end_ns = self.kernel.run()
        except DeadlockDetected as err:
            raise DeadlockDetected(err.pending + len(self.unissued), err.time_ns) from err
        if self.unissued:
            raise DeadlockDetected(len(self.unissued), end_ns)
        makespan_ns = max(end_ns, self.trace.end_ns)
        for state in self.strings.values():
            state.idle_ns += makespan_ns - state.idle_since_ns
        return self.trace, self.metrics(makespan_ns)

    # processes

    def _operation(self, index: int) -> ProcessBody:
        op = self.circuit.ops[index]
        strings = self.operand_strings(op)
        subject = "+".join(strings)
        if op.kind in GATE_EVENTS:
            zone = self.qalu_zone
            station = self.stations[self.qalu_track.id]  # type: ignore[union-attr]
            entry = self.stage_resources[0]
        else:
            zone = self.choose_detection_zone()
            station = self.stations[self.layout.tracks_in_zone(zone)[0].id]
            entry = self.detection_resources[zone][0]

        yield Acquire((entry,))
        for sid in strings:
            yield from self._fetch(sid, station)

        if op.kind in GATE_EVENTS:
            vacate = yield from self._pipeline_pass(index, op, subject)
        else:
            vacate = yield from self._detection_pass(index, op, subject, zone)

        following = set(self.operand_strings(self.circuit.ops[index + 1])) if index + 1 < len(self.circuit.ops) else set()
        yield from self._leave(strings, station, vacate, following)
        for sid in strings:
            self.strings[sid].busy = False
        logger.debug(f"op{index} {op.name or op.kind.value} on {subject} done at {self.kernel.now} ns")
        self.dispatch()

    def choose_detection_zone(self) -> str:
        least = min(self.detection_load.values())
        tied = sorted(zone for zone, load in self.detection_load.items() if load == least)
        zone = tied[0] if len(tied) == 1 else tied[int(self.rng.integers(len(tied)))]
        self.detection_load[zone] += 1
        return zone

    def _route_banks(self, route: list[tuple[str, int]]) -> set[str]:
        return {self.layout.track(node_id).bank_id for kind, node_id in route if kind == "track"}

    def _acquire(self, ports: set[Resource], bank_ids: set[str]) -> Acquire:
        ordered = sorted(ports, key=lambda r: r.name) + [self.bank(bank_id) for bank_id in sorted(bank_ids)]
        return Acquire(tuple(ordered))

    def _release_banks(self, bank_ids: set[str]) -> None:
        for bank_id in sorted(bank_ids):
            self.kernel.release(self.bank(bank_id))

    def _place(self, sid: str, well: Optional[Well]) -> None:
        """Record the well a string occupies from now on; ``None`` when it is in a cell or a process region."""
        self.strings[sid].location = well
        if well is None:
            self.memory.on_tracks.pop(sid, None)
        else:
            self.memory.on_tracks[sid] = well
        self.placements.append((self.kernel.now, sid, well))

    def _fetch(self, sid: str, station: Station) -> ProcessBody:
        """Bring a string into ``station``'s process region; the caller holds the region's first resource."""
        state = self.strings[sid]
        ports = {station.gate}
        if state.location is None:
            start = self.layout.transport_track(state.zone_id).id
            route = self.layout.route(start, station.track.id)
            banks = self._route_banks(route) | {self.layout.memory_bank(state.zone_id)}
            yield self._acquire(ports, banks)
            plan = access_memory_cell(self.layout, self.memory, state.zone_id, state.cell, self.params, sid)
            yield from self._execute(plan, state.zone_id)
        else:
            origin = self.stations[state.location[0]]
            ports.add(origin.gate)
            route = self.layout.route(origin.track.id, station.track.id)
            banks = self._route_banks(route)
            yield self._acquire(ports, banks)
            origin.held_by = None
        yield from self._travel(sid, route)
        track_id, index = state.location  # type: ignore[misc]
        if index != station.port:
            plan = plan_linear_move(self.layout, sid, track_id, index, station.port, self.params, self.memory.on_tracks)
            yield from self._execute(plan, station.zone_id)
        self._release_banks(banks)
        self._place(sid, None)
        state.station = station.track.id
        for port in sorted(ports, key=lambda r: r.name):
            self.kernel.release(port)

    def _leave(
        self, strings: list[str], station: Station, vacate: Callable[[], None], following: set[str]
    ) -> ProcessBody:
        """Strings leave one at a time through the port; the last one frees the process region."""
        for number, sid in enumerate(strings):
            yield Acquire((station.gate,))
            self.strings[sid].station = None
            self._place(sid, station.port_well)
            if number == len(strings) - 1:
                vacate()
            if sid in following and station.hold is not None and station.held_by is None:
                yield from self._retain(sid, station)
            else:
                yield from self._write_back(sid)
            self.kernel.release(station.gate)

    def _retain(self, sid: str, station: Station) -> ProcessBody:
        station.held_by = sid
        bank_ids = {station.track.bank_id}
        yield self._acquire(set(), bank_ids)
        plan = plan_linear_move(
            self.layout, sid, station.track.id, station.port, station.hold, self.params, self.memory.on_tracks  # type: ignore[arg-type]
        )
        yield from self._execute(plan, station.zone_id)
        self._release_banks(bank_ids)

    def _write_back(self, sid: str) -> ProcessBody:
        state = self.strings[sid]
        transport = self.layout.transport_track(state.zone_id)
        route = self.layout.route(state.location[0], transport.id)  # type: ignore[index]
        banks = self._route_banks(route) | {self.layout.memory_bank(state.zone_id)}
        yield self._acquire(set(), banks)
        yield from self._travel(sid, route)
        track_id, index = state.location  # type: ignore[misc]
        _, entry = insertion_location(self.layout, state.zone_id, state.cell)
        if index != entry:
            plan = plan_linear_move(self.layout, sid, track_id, index, entry, self.params, self.memory.on_tracks)
            yield from self._execute(plan, state.zone_id)
        plan = return_to_memory_cell(self.layout, self.memory, state.zone_id, state.cell, sid, self.params)
        yield from self._execute(plan, state.zone_id)
        self._release_banks(banks)

    def _travel(self, sid: str, route: list[tuple[str, int]]) -> ProcessBody:
        """Follow an alternating track/junction route; the string ends parked at the last junction's exit."""
        for position in range(1, len(route) - 1, 2):
            _, in_arm = route[position - 1]
            _, junction_id = route[position]
            _, out_arm = route[position + 1]
            state = self.strings[sid]
            track_id, index = state.location  # type: ignore[misc]
            park = self.layout.track(in_arm).park_index(self.layout.junction(junction_id).end_of(in_arm))
            zone = self.layout.track(in_arm).zone_id
            if index != park:
                plan = plan_linear_move(self.layout, sid, track_id, index, park, self.params, self.memory.on_tracks)
                yield from self._execute(plan, zone)
            crossing = self.bank(f"junction:{junction_id}")
            yield Acquire((crossing,))
            plan = traverse_junction(self.layout, sid, junction_id, in_arm, out_arm, self.params, self.memory.on_tracks)
            yield from self._execute(plan, f"junction:{junction_id}")
            self.kernel.release(crossing)

    def _execute(self, plan: MovePlan, zone: str) -> ProcessBody:
        """Commit a plan, record one event per step and bank, and wait for it to finish."""
        start = self.kernel.now
        for number, step in enumerate(plan.steps):
            switch = (plan.kind == "access" and number == 0) or (plan.kind == "insert" and number == len(plan.steps) - 1)
            for bank_id, dacs in sorted(plan.bank_usage(step).items()):
                self.trace.record(
                    start + to_ns(step.time_offset_s),
                    EventKind.MUX_SWITCH if switch else EventKind.SHUTTLE_STEP,
                    "+".join(plan.strings),
                    zone,
                    bank=bank_id,
                    budget=plan.budget_of(bank_id),
                    dacs=sorted(dacs),
                    dur_ns=to_ns(step.duration_s),
                    plan=plan.kind,
                )
        self.dac_switches += plan.handoffs
        self.memory.begin(plan)
        for sid, location in plan.final_locations.items():
            self._place(sid, location)
        if plan.kind == "insert":
            for sid in plan.strings:
                self._place(sid, None)
        yield Delay(sum(to_ns(step.duration_s) for step in plan.steps))
        self.memory.finish(plan)

    def _pipeline_pass(self, index: int, op: CircuitOp, subject: str) -> ProcessBody:
        """Run the QALU stages; the caller already holds the first one. Returns the exit action of the last."""
        gate_ns = to_ns(self.params.t_2q_s if op.kind == GateKind.TWO_QUBIT else self.params.t_1q_s)
        held = self.stage_resources[0]
        self._enter_cooling(subject)
        for number, (stage, resource) in enumerate(zip(self.stages, self.stage_resources)):
            if number:
                yield Acquire((resource,))
                self._stage_exit(held, subject)
                held = resource
            detail = {"stage": stage.index, "stage_kind": stage.kind.value, "op": index}
            self.trace.record(self.kernel.now, EventKind.STAGE_ENTER, subject, self.qalu_zone, **detail)
            dwell = to_ns(stage.duration_s)
            if stage.kind == StageKind.QIP:
                dwell = max(dwell, gate_ns)
                self.trace.record(
                    self.kernel.now, GATE_EVENTS[op.kind], subject, self.qalu_zone, op=index, name=op.name, dur_ns=gate_ns
                )
            yield Delay(dwell)
        for sid in subject.split("+"):
            self.strings[sid].idle_since_ns = self.kernel.now
        last = held
        return lambda: self._stage_exit(last, subject)

    def _stage_exit(self, resource: Resource, subject: str) -> None:
        stage = int(resource.name.split(":")[1])
        self.trace.record(self.kernel.now, EventKind.STAGE_EXIT, subject, self.qalu_zone, stage=stage)
        self.kernel.release(resource)

    def _enter_cooling(self, subject: str) -> None:
        for sid in subject.split("+"):
            state = self.strings[sid]
            state.idle_ns += self.kernel.now - state.idle_since_ns

    def _detection_pass(self, index: int, op: CircuitOp, subject: str, zone: str) -> ProcessBody:
        """Swap and GHZ preparation, then detection; the caller already holds the preparation sub-zone."""
        prepare, detect = self.detection_resources[zone]
        self.trace.record(self.kernel.now, EventKind.STAGE_ENTER, subject, zone, stage="swap_ghz", op=index)
        if op.kind == GateKind.INIT:
            yield Delay(to_ns(initialization_time(self.params.t_2q_s)))
            self.trace.record(self.kernel.now, EventKind.INIT_DONE, subject, zone, op=index)
            self.detection_load[zone] -= 1

            def vacate() -> None:
                self.trace.record(self.kernel.now, EventKind.STAGE_EXIT, subject, zone, stage="swap_ghz")
                self.kernel.release(prepare)

            return vacate
        yield Delay(to_ns(ghz_generation_time(self.params.n_ghz_ancillas, self.params.t_2q_s)))
        yield Acquire((detect,))
        self.trace.record(self.kernel.now, EventKind.STAGE_EXIT, subject, zone, stage="swap_ghz")
        self.kernel.release(prepare)
        detect_ns = to_ns(self.params.detection_time_s)
        self.trace.record(self.kernel.now, EventKind.DETECT_START, subject, zone, op=index, dur_ns=detect_ns)
        yield Delay(detect_ns)
        self.trace.record(self.kernel.now, EventKind.DETECT_END, subject, zone, op=index)
        self.detection_load[zone] -= 1
        return lambda: self.kernel.release(detect)

    # results

    def metrics(self, makespan_ns: int) -> SimMetrics:
        counts = {
            "Gate1Q": len(self.trace.of_kind(EventKind.GATE_1Q)),
            "Gate2Q": len(self.trace.of_kind(EventKind.GATE_2Q)),
            "Measure": len(self.trace.of_kind(EventKind.DETECT_START)),
            "Init": len(self.trace.of_kind(EventKind.INIT_DONE)),
        }
        makespan_s = to_s(makespan_ns)
        beat = pipeline_metrics(self.pipeline)
        audit = audit_dac_usage(self.trace)
        if audit.violations:
            logger.error(f"DAC audit found {len(audit.violations)} violations")
        return SimMetrics(
            makespan_s=makespan_s,
            counts=counts,
            single_qubit_ops_per_s=per_second(counts["Gate1Q"], makespan_s) if makespan_ns else 0.0,
            entangling_gates_per_s=per_second(counts["Gate2Q"], makespan_s) if makespan_ns else 0.0,
            ideal_single_qubit_ops_per_s=per_second(self.params.n_parallel_1q, max(self.params.t_1q_s, beat.cycle_time_s)),
            ideal_entangling_gates_per_s=beat.throughput_per_s,
            dac_switch_count=self.dac_switches,
            utilization=self.utilization(makespan_ns),
            peak_dac_pairs=audit.peak,
            idle_phonons={
                sid: idle_phonons(to_s(state.idle_ns), self.params.memory_heating_rate_quanta_per_s)
                for sid, state in sorted(self.strings.items())
            },
        )

    def utilization(self, makespan_ns: int) -> dict[str, float]:
        if makespan_ns == 0:
            return {zone.id: 0.0 for zone in self.layout.zones}
        result = {}
        for zone in self.layout.zones:
            if zone.id == self.qalu_zone and self.stage_resources:
                busy = [r.busy_ns for r in self.stage_resources]
            elif zone.id in self.detection_resources:
                busy = [r.busy_ns for r in self.detection_resources[zone.id]]
            else:
                tracks = self.layout.tracks_in_zone(zone.id)
                bank = self.banks.get(self.layout.transport_track(zone.id).bank_id) if tracks else None
                busy = [bank.busy_ns if bank is not None else 0]
            result[zone.id] = min(1.0, sum(busy) / len(busy) / makespan_ns)
        return result


def run(layout: TrapLayout, circuit: Circuit, params: MachineParams | None = None, seed: int = 0) -> tuple[EventTrace, SimMetrics]:
    """
    Simulate a circuit.

    Args:
        layout: Trap layout
        circuit: Circuit with (or without) a qubit-to-cell map
        params: Machine parameters
        seed: Tie-break seed for equally loaded detection zones

    Returns:
        tuple[EventTrace, SimMetrics]: Ordered trace and run metrics

    Raises:
        CapacityExceeded: The circuit does not fit the memory
        DeadlockDetected: Work remains but nothing can run
    """
    params = params or MachineParams()
    try:
        simulator = Simulator(layout, circuit, params, seed)
    except CapacityExceeded:
        logger.error("Circuit exceeds memory capacity")
        raise
    trace, metrics = simulator.run()
    logger.info(
        f"Simulated {len(circuit.ops)} ops: makespan {metrics.makespan_s:.6g} s, {len(trace)} events, "
        f"{metrics.dac_switch_count} DAC switches"
    )
    return trace, metrics
