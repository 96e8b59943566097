"""Memory-cell access: static voltage sets, extraction and insertion."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from logic.logging_config import configured_logger as logger
from model.dtos import MachineParams
from qvn.core.layout import PAIRS_PER_WELL, Cell, TrapLayout, ZoneKind
from qvn.shuttle.plan import IN_CELL, MovePlan, PlanStep
from qvn.shuttle.planner import Mover, walk, window_width
from qvn.utils.exceptions import BudgetExceeded, CellEmpty, CellNotOnStaticSet, Obstructed, OutOfRange

CellKey = tuple[str, Cell]


@dataclass
class MemoryState:
    """
    Occupancy of memory cells and transport tracks.

    Between accesses every cell is on its static voltage set; ``off_static`` names the
    cells currently switched to independent DACs.
    """

    residents: dict[CellKey, list[str]] = field(default_factory=dict)
    on_tracks: dict[str, tuple[int, int]] = field(default_factory=dict)
    off_static: set[CellKey] = field(default_factory=set)

    @classmethod
    def filled(cls, layout: TrapLayout, strings_per_cell: int = 2) -> "MemoryState":
        """Every memory cell holding ``strings_per_cell`` strings named ``zone:col,row:slot``."""
        residents = {
            (zone.id, cell): [f"{zone.id}:{cell[0]},{cell[1]}:{slot}" for slot in range(strings_per_cell)]
            for zone in layout.zones_of_kind(ZoneKind.MEMORY)
            for cell in zone.cells()
        }
        return cls(residents=residents)

    def occupants(self, zone_id: str, cell: Cell) -> list[str]:
        return list(self.residents.get((zone_id, cell), []))

    def snapshot(self) -> dict[CellKey, tuple[str, ...]]:
        return {key: tuple(strings) for key, strings in self.residents.items()}

    def begin(self, plan: MovePlan) -> None:
        """
        Commit the start of a plan.

        A cell the plan touches leaves its static set until :meth:`finish`; an extracted
        string leaves its cell, an inserting string leaves the track.
        """
        if plan.cell is not None:
            self.off_static.add(plan.cell)
        if plan.kind == "insert":
            for string_id in plan.strings:
                self.on_tracks.pop(string_id, None)
            return
        if plan.kind == "access" and plan.cell is not None:
            for string_id in plan.strings:
                self.residents[plan.cell].remove(string_id)
        for string_id, location in plan.final_locations.items():
            self.on_tracks[string_id] = location

    def finish(self, plan: MovePlan) -> None:
        """The plan has run: an inserted string rests in its cell and the cell is back on its static set."""
        if plan.cell is None:
            return
        if plan.kind == "insert":
            for string_id in plan.strings:
                self.residents.setdefault(plan.cell, []).append(string_id)
        self.off_static.discard(plan.cell)

    def apply(self, plan: MovePlan) -> None:
        """Commit a whole plan at once; callers serialize application."""
        self.begin(plan)
        self.finish(plan)


def _check_cell(layout: TrapLayout, zone_id: str, cell: Cell) -> None:
    zone = layout.zone(zone_id)
    if zone.has_cell(cell):
        return
    cols, rows = zone.grid or (0, 0)
    if not 0 <= cell[0] < cols:
        raise OutOfRange(f"cell column of {zone_id}", cell[0], 0, cols - 1)
    raise OutOfRange(f"cell row of {zone_id}", cell[1], 0, rows - 1)


def _check_bank_idle(layout: TrapLayout, state: MemoryState, zone_id: str, cell: Cell, params: MachineParams) -> None:
    bank = layout.memory_bank(zone_id)
    for other_zone, other_cell in state.off_static:
        if (other_zone, other_cell) != (zone_id, cell) and layout.memory_bank(other_zone) == bank:
            raise BudgetExceeded(bank, 2 * window_width(params), layout.bank(bank).n_independent_dac_pairs)


def _extraction_path(layout: TrapLayout, zone_id: str, cell: Cell) -> tuple[list[int], int, int]:
    track = layout.transport_track(zone_id)
    entry = layout.entry_index(zone_id, cell)
    track_ids = [pair.id for pair in track.pairs[entry : entry + PAIRS_PER_WELL]]
    return list(layout.cell_pairs(zone_id, cell)) + track_ids, track.id, entry


def access_memory_cell(
    layout: TrapLayout,
    state: MemoryState,
    zone_id: str,
    cell: Cell,
    params: MachineParams,
    string_id: Optional[str] = None,
) -> MovePlan:
    """
    Switch a cell from its static set to independent DACs and extract one string.

    The first step moves the cell's three pairs from the static set onto bank DACs
    through the analog multiplexers; the string then walks onto the zone's transport
    track, releasing the cell pairs back to the static set as it leaves.

    Raises:
        CellEmpty: No string resides in the cell
        CellNotOnStaticSet: The cell is already under DAC control
    """
    _check_cell(layout, zone_id, cell)
    if (zone_id, cell) in state.off_static:
        raise CellNotOnStaticSet(zone_id, cell)
    residents = state.occupants(zone_id, cell)
    if not residents:
        raise CellEmpty(zone_id, cell)
    if string_id is None:
        string_id = residents[0]
    elif string_id not in residents:
        raise CellEmpty(zone_id, cell)
    _check_bank_idle(layout, state, zone_id, cell, params)

    path, track_id, entry = _extraction_path(layout, zone_id, cell)
    for other, (tid, index) in state.on_tracks.items():
        if tid == track_id and other != string_id and abs(index - (entry + 1)) < window_width(params):
            raise Obstructed(track_id, index, other)

    bank = layout.bank(layout.memory_bank(zone_id))
    width = window_width(params)
    cell_pairs = path[:PAIRS_PER_WELL]
    switch = PlanStep(
        time_offset_s=0.0,
        duration_s=params.mux_switch_s,
        assignments=frozenset(((k - 1) % width, seg) for k, seg in enumerate(cell_pairs)),
        releases=frozenset(),
        well_positions={string_id: IN_CELL},
        guarded={string_id: tuple(cell_pairs)},
    )
    track_index = {seg: entry + k for k, seg in enumerate(path[PAIRS_PER_WELL:])}
    mover = Mover(string_id, path, 1, lambda p: track_index.get(path[p], IN_CELL))
    steps = [switch] + walk([mover], PAIRS_PER_WELL, 1, params, t0=params.mux_switch_s)
    logger.debug(f"Access {zone_id} cell {cell}: {string_id} onto track {track_id} at {entry + 1}")
    return MovePlan(
        kind="access",
        bank_id=bank.id,
        budget=bank.n_independent_dac_pairs,
        strings=(string_id,),
        steps=tuple(steps),
        final_locations={string_id: (track_id, entry + 1)},
        cell=(zone_id, cell),
    )


def return_to_memory_cell(
    layout: TrapLayout,
    state: MemoryState,
    zone_id: str,
    cell: Cell,
    string_id: str,
    params: MachineParams,
) -> MovePlan:
    """Inverse of :func:`access_memory_cell`: walk a string into its cell and hand the cell back to the static set."""
    _check_cell(layout, zone_id, cell)
    if (zone_id, cell) in state.off_static:
        raise CellNotOnStaticSet(zone_id, cell)
    _check_bank_idle(layout, state, zone_id, cell, params)

    path, track_id, entry = _extraction_path(layout, zone_id, cell)
    path = path[::-1]
    cell_pairs = path[-PAIRS_PER_WELL:]
    track_index = {seg: entry + PAIRS_PER_WELL - 1 - k for k, seg in enumerate(path[:PAIRS_PER_WELL])}
    mover = Mover(string_id, path, 1, lambda p: track_index.get(path[p], IN_CELL))
    steps = walk([mover], PAIRS_PER_WELL, 1, params)
    steps.append(
        PlanStep(
            time_offset_s=sum(step.duration_s for step in steps),
            duration_s=params.mux_switch_s,
            assignments=frozenset(),
            releases=frozenset(cell_pairs),
            well_positions={string_id: IN_CELL},
        )
    )
    bank = layout.bank(layout.memory_bank(zone_id))
    return MovePlan(
        kind="insert",
        bank_id=bank.id,
        budget=bank.n_independent_dac_pairs,
        strings=(string_id,),
        steps=tuple(steps),
        cell=(zone_id, cell),
    )


def insertion_location(layout: TrapLayout, zone_id: str, cell: Cell) -> tuple[int, int]:
    """Transport-track position a string must reach before insertion into ``cell``."""
    track = layout.transport_track(zone_id)
    return track.id, layout.entry_index(zone_id, cell) + 1
