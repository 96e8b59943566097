"""Trap layout graph: zones, tracks, junctions, segment pairs and DAC banks."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional

import networkx as nx

DEFAULT_UNIT_LENGTH_M = 8.0e-5
DEFAULT_BANK_PAIRS = 4
PAIRS_PER_WELL = 3

Cell = tuple[int, int]


class ZoneKind(str, Enum):
    MEMORY = "memory"
    QALU = "qalu"
    DETECTION = "detection"
    STORAGE = "storage"
    CONNECTING = "connecting"


class ControlKind(str, Enum):
    STATIC_SET = "static_set"
    MUX_BANK = "mux_bank"
    DEDICATED = "dedicated"


class JunctionKind(str, Enum):
    X = "X"
    Y = "Y"


ARM_COUNT = {JunctionKind.X: 4, JunctionKind.Y: 3}


@dataclass(frozen=True)
class PairControl:
    kind: ControlKind
    ref: str


@dataclass(frozen=True)
class SegmentPair:
    id: int
    track_id: int
    index_on_track: int
    control: PairControl


@dataclass(frozen=True)
class Track:
    id: int
    zone_id: str
    pairs: tuple[SegmentPair, ...]
    bank_id: str
    storage_allowed: bool = False
    cooling_beam_axis: bool = False

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def pair_id(self, index: int) -> int:
        return self.pairs[index].id

    def park_index(self, end: str) -> int:
        """Well index next to the given track end, the first position with both neighbours on the track."""
        return 1 if end == "head" else self.n_pairs - 2

    def toward(self, end: str) -> list[int]:
        """Pair ids ordered from the interior toward ``end``."""
        ids = [pair.id for pair in self.pairs]
        return ids if end == "tail" else ids[::-1]


@dataclass(frozen=True)
class Junction:
    id: int
    kind: JunctionKind
    arm_track_ids: tuple[int, ...]
    arm_ends: tuple[str, ...]
    extra_pair_budget: int = 2

    def end_of(self, track_id: int) -> str:
        return self.arm_ends[self.arm_track_ids.index(track_id)]


@dataclass(frozen=True)
class Zone:
    id: str
    kind: ZoneKind
    size_ul: Optional[tuple[int, int]]
    segment_count: int
    independent_dac_count: int
    grid: Optional[tuple[int, int]] = None
    cell_capacity_qubit_ions: int = 0

    @property
    def n_cells(self) -> int:
        if self.grid is None:
            return 0
        cols, rows = self.grid
        return cols * rows

    @property
    def capacity_qubit_ions(self) -> int:
        return self.n_cells * self.cell_capacity_qubit_ions

    def has_cell(self, cell: Cell) -> bool:
        if self.grid is None:
            return False
        col, row = cell
        return 0 <= col < self.grid[0] and 0 <= row < self.grid[1]

    def cells(self) -> Iterator[Cell]:
        if self.grid is None:
            return
        cols, rows = self.grid
        for row in range(rows):
            for col in range(cols):
                yield (col, row)


@dataclass(frozen=True)
class DacBank:
    id: str
    n_independent_dac_pairs: int = DEFAULT_BANK_PAIRS


@dataclass(frozen=True)
class StaticVoltageSet:
    id: str
    zone_id: str
    n_pairs: int = PAIRS_PER_WELL


@dataclass(frozen=True)
class TrapLayout:
    zones: tuple[Zone, ...]
    tracks: tuple[Track, ...]
    junctions: tuple[Junction, ...] = ()
    unit_length_m: float = DEFAULT_UNIT_LENGTH_M
    dac_banks: tuple[DacBank, ...] = ()
    static_voltage_sets: tuple[StaticVoltageSet, ...] = ()
    size_ul: Optional[tuple[int, int]] = None

    # lookups

    @cached_property
    def _zones(self) -> dict[str, Zone]:
        return {zone.id: zone for zone in self.zones}

    @cached_property
    def _tracks(self) -> dict[int, Track]:
        return {track.id: track for track in self.tracks}

    @cached_property
    def _junctions(self) -> dict[int, Junction]:
        return {junction.id: junction for junction in self.junctions}

    @cached_property
    def _banks(self) -> dict[str, DacBank]:
        return {bank.id: bank for bank in self.dac_banks}

    def zone(self, zone_id: str) -> Zone:
        return self._zones[zone_id]

    def track(self, track_id: int) -> Track:
        return self._tracks[track_id]

    def junction(self, junction_id: int) -> Junction:
        return self._junctions[junction_id]

    def bank(self, bank_id: str) -> DacBank:
        if bank_id in self._banks:
            return self._banks[bank_id]
        if bank_id.startswith("dedicated:"):
            track = self.track(int(bank_id.split(":", 1)[1]))
            return DacBank(bank_id, track.n_pairs)
        return DacBank(bank_id)

    def zones_of_kind(self, kind: ZoneKind) -> list[Zone]:
        return [zone for zone in self.zones if zone.kind == kind]

    def tracks_in_zone(self, zone_id: str) -> list[Track]:
        return [track for track in self.tracks if track.zone_id == zone_id]

    # totals

    @property
    def total_segments(self) -> int:
        return sum(zone.segment_count for zone in self.zones)

    @property
    def total_dacs(self) -> int:
        return sum(zone.independent_dac_count for zone in self.zones)

    @property
    def capacity_qubit_ions(self) -> int:
        return sum(zone.capacity_qubit_ions for zone in self.zones)

    @property
    def n_cells(self) -> int:
        return sum(zone.n_cells for zone in self.zones)

    @property
    def n_track_pairs(self) -> int:
        return sum(track.n_pairs for track in self.tracks)

    # graph

    @cached_property
    def graph(self) -> nx.Graph:
        """Bipartite track/junction graph; nodes are ``("track", id)`` and ``("junction", id)``."""
        graph = nx.Graph()
        for track in self.tracks:
            graph.add_node(("track", track.id), zone=track.zone_id)
        for junction in self.junctions:
            graph.add_node(("junction", junction.id), kind=junction.kind.value)
            for track_id in junction.arm_track_ids:
                graph.add_edge(("junction", junction.id), ("track", track_id))
        return graph

    def is_connected(self) -> bool:
        return self.graph.number_of_nodes() == 0 or nx.is_connected(self.graph)

    def connected(self, track_a: int, track_b: int) -> bool:
        return nx.has_path(self.graph, ("track", track_a), ("track", track_b))

    def route(self, from_track: int, to_track: int) -> list[tuple[str, int]]:
        """Shortest alternating track/junction path between two tracks."""
        return list(nx.shortest_path(self.graph, ("track", from_track), ("track", to_track)))

    # memory cells

    def transport_track(self, zone_id: str) -> Track:
        """Track along which strings leave a zone; cooling-axis transport tracks first."""
        tracks = self.tracks_in_zone(zone_id)
        if not tracks:
            raise KeyError(f"zone {zone_id} has no tracks")
        ranked = sorted(tracks, key=lambda t: (t.storage_allowed, not t.cooling_beam_axis))
        return ranked[0]

    def entry_index(self, zone_id: str, cell: Cell) -> int:
        """
        First transport-track index of the extraction window for a cell.

        Columns spread evenly over the valid entries ``0 .. n_pairs - 3``; when a zone
        has more columns than entries, neighbouring columns share an entry point.
        """
        track = self.transport_track(zone_id)
        grid = self.zone(zone_id).grid
        cols = grid[0] if grid else 1
        return cell[0] * (track.n_pairs - PAIRS_PER_WELL) // max(cols - 1, 1)

    @cached_property
    def _cell_bases(self) -> dict[str, int]:
        bases = {}
        next_id = self.n_track_pairs
        for zone in self.zones:
            if zone.kind == ZoneKind.MEMORY and zone.grid is not None:
                bases[zone.id] = next_id
                next_id += zone.n_cells * PAIRS_PER_WELL
        return bases

    def cell_pairs(self, zone_id: str, cell: Cell) -> tuple[int, ...]:
        """Segment pair ids confining the well of a memory cell."""
        zone = self.zone(zone_id)
        col, row = cell
        base = self._cell_bases[zone_id] + (row * zone.grid[0] + col) * PAIRS_PER_WELL  # type: ignore[index]
        return tuple(base + k for k in range(PAIRS_PER_WELL))

    def memory_bank(self, zone_id: str) -> str:
        return self.transport_track(zone_id).bank_id

    def qalu_track(self) -> Optional[Track]:
        qalus = self.zones_of_kind(ZoneKind.QALU)
        if not qalus:
            return None
        tracks = self.tracks_in_zone(qalus[0].id)
        return tracks[0] if tracks else None

    @property
    def layout_size_ul(self) -> tuple[int, int]:
        if self.size_ul is not None:
            return self.size_ul
        sized = [zone.size_ul for zone in self.zones if zone.size_ul is not None]
        if not sized:
            return (0, 0)
        return (max(w for w, _ in sized), max(h for _, h in sized))
