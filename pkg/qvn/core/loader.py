"""Layout and circuit loading, validation and export."""
from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError as PydanticValidationError

from database.repository import read_json, write_json
from logic.logging_config import configured_logger as logger
from model.dtos import MachineParams
from model.schema import CircuitDocument, LayoutDocument, OpRecord
from qvn.core.ions import OP_NAMES, CellRef, Circuit, CircuitOp
from qvn.core.layout import (
    ARM_COUNT,
    DEFAULT_BANK_PAIRS,
    ControlKind,
    DacBank,
    Junction,
    JunctionKind,
    PairControl,
    SegmentPair,
    StaticVoltageSet,
    Track,
    TrapLayout,
    Zone,
    ZoneKind,
)
from qvn.utils.exceptions import CapacityExceeded, ParseError, ValidationError

DEFAULT_BANK = "default"


def load_layout(path: str | Path) -> TrapLayout:
    """
    Load and validate a layout file.

    Args:
        path: JSON layout document

    Returns:
        TrapLayout: Validated layout

    Raises:
        ParseError: The file does not match the layout schema
        ValidationError: A layout invariant is violated
    """
    raw = read_json(path)
    layout = layout_from_document(raw, source=str(path))
    logger.info(f"Loaded layout {path}: {len(layout.zones)} zones, {len(layout.tracks)} tracks")
    return layout


def parse_layout_document(raw: Any, source: str = "<layout>") -> LayoutDocument:
    try:
        return LayoutDocument.model_validate(raw)
    except PydanticValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{source}: {where}: {first['msg']}", path=source) from e


def layout_from_document(raw: Any, source: str = "<layout>") -> TrapLayout:
    document = parse_layout_document(raw, source)

    zones = tuple(
        Zone(
            id=record.id,
            kind=ZoneKind(record.kind),
            size_ul=record.size_ul,
            segment_count=record.segments,
            independent_dac_count=record.dacs,
            grid=record.grid,
            cell_capacity_qubit_ions=record.cell_capacity or 0,
        )
        for record in document.zones
    )

    tracks = []
    next_pair = 0
    for record in document.tracks:
        if record.dedicated:
            bank_id = f"dedicated:{record.id}"
        else:
            bank_id = record.bank or DEFAULT_BANK
        pairs = []
        for index in range(record.pairs):
            if record.static_set is not None:
                control = PairControl(ControlKind.STATIC_SET, record.static_set)
            elif record.dedicated:
                control = PairControl(ControlKind.DEDICATED, f"{record.id}.{index}")
            else:
                control = PairControl(ControlKind.MUX_BANK, bank_id)
            pairs.append(SegmentPair(next_pair, record.id, index, control))
            next_pair += 1
        tracks.append(
            Track(
                id=record.id,
                zone_id=record.zone,
                pairs=tuple(pairs),
                bank_id=bank_id,
                storage_allowed=record.storage_allowed,
                cooling_beam_axis=record.cooling_beam_axis,
            )
        )

    junctions = tuple(
        Junction(
            id=record.id,
            kind=JunctionKind(record.kind),
            arm_track_ids=tuple(record.arms),
            arm_ends=tuple(record.ends) if record.ends is not None else ("tail",) * len(record.arms),
            extra_pair_budget=record.extra_pair_budget,
        )
        for record in document.junctions
    )

    banks = [DacBank(record.id, record.pairs) for record in document.dac_banks]
    declared = {bank.id for bank in banks}
    for track in tracks:
        if track.bank_id not in declared and not track.bank_id.startswith("dedicated:"):
            if document.dac_banks:
                raise ValidationError(f"track {track.id} uses undeclared DAC bank {track.bank_id}", invariant="unknown bank")
            banks.append(DacBank(track.bank_id, DEFAULT_BANK_PAIRS))
            declared.add(track.bank_id)

    layout = TrapLayout(
        zones=zones,
        tracks=tuple(tracks),
        junctions=junctions,
        unit_length_m=document.unit_length_m,
        dac_banks=tuple(banks),
        static_voltage_sets=tuple(
            StaticVoltageSet(record.id, record.zone, record.pairs) for record in document.static_sets
        ),
        size_ul=document.size_ul,
    )
    validate_layout(layout)
    if document.size_ul is None:
        logger.warning(f"{source}: no size_ul given, using the largest zone extent {layout.layout_size_ul}")
    return layout


def _fail(message: str, invariant: str) -> None:
    raise ValidationError(f"{invariant}: {message}", invariant=invariant)


def validate_layout(layout: TrapLayout) -> None:
    """Check layout invariants in a fixed order; the first violation is raised."""
    zone_ids = [zone.id for zone in layout.zones]
    track_ids = [track.id for track in layout.tracks]
    junction_ids = [junction.id for junction in layout.junctions]
    for name, ids in (("zone", zone_ids), ("track", track_ids), ("junction", junction_ids)):
        if len(set(ids)) != len(ids):
            _fail(f"{name} ids repeat", "duplicate id")

    for zone in layout.zones:
        if zone.kind == ZoneKind.MEMORY:
            if zone.grid is None or zone.grid[0] <= 0 or zone.grid[1] <= 0:
                _fail(f"memory zone {zone.id} needs a rectangular cols x rows grid", "memory grid")

    known_zones = set(zone_ids)
    for track in layout.tracks:
        if track.zone_id not in known_zones:
            _fail(f"track {track.id} names unknown zone {track.zone_id}", "unknown zone")
        if track.n_pairs < 3:
            _fail(f"track {track.id} has {track.n_pairs} segment pairs, at least 3 confine a well", "track length")
        if track.storage_allowed and track.cooling_beam_axis:
            _fail(f"track {track.id} stores ions on the cooling-beam axis", "storage orientation")

    known_tracks = set(track_ids)
    for junction in layout.junctions:
        if len(junction.arm_track_ids) != ARM_COUNT[junction.kind]:
            _fail(
                f"junction {junction.id} of kind {junction.kind.value} has {len(junction.arm_track_ids)} arms",
                "arm count",
            )
        if len(junction.arm_ends) != len(junction.arm_track_ids):
            _fail(f"junction {junction.id} lists {len(junction.arm_ends)} ends", "arm count")
        if len(set(junction.arm_track_ids)) != len(junction.arm_track_ids):
            _fail(f"junction {junction.id} repeats an arm", "arm count")
        unknown = [arm for arm in junction.arm_track_ids if arm not in known_tracks]
        if unknown:
            _fail(f"junction {junction.id} joins unknown tracks {unknown}", "unknown track")

    for static in layout.static_voltage_sets:
        if static.zone_id not in known_zones:
            _fail(f"static set {static.id} names unknown zone {static.zone_id}", "unknown zone")

    for zone in layout.zones:
        modeled = 2 * sum(track.n_pairs for track in layout.tracks_in_zone(zone.id))
        if modeled > zone.segment_count:
            _fail(f"zone {zone.id} models {modeled} segments but declares {zone.segment_count}", "segment count")

    qalu = layout.qalu_track()
    for zone in layout.zones_of_kind(ZoneKind.MEMORY):
        tracks = layout.tracks_in_zone(zone.id)
        reachable = bool(tracks) and (qalu is None or any(layout.connected(t.id, qalu.id) for t in tracks))
        if not reachable:
            _fail(f"zone {zone.id}, cell (0, 0) has no path to the QALU", "unreachable cell")

    if not layout.is_connected():
        _fail("tracks and junctions form more than one component", "disconnected")


def layout_to_document(layout: TrapLayout) -> dict[str, Any]:
    """Serialize a layout back into the layout schema."""
    document: dict[str, Any] = {"unit_length_m": layout.unit_length_m}
    if layout.size_ul is not None:
        document["size_ul"] = list(layout.size_ul)
    document["zones"] = []
    for zone in layout.zones:
        record: dict[str, Any] = {
            "id": zone.id,
            "kind": zone.kind.value,
            "size_ul": list(zone.size_ul) if zone.size_ul is not None else None,
            "segments": zone.segment_count,
            "dacs": zone.independent_dac_count,
        }
        if zone.grid is not None:
            record["grid"] = list(zone.grid)
            record["cell_capacity"] = zone.cell_capacity_qubit_ions
        document["zones"].append(record)
    document["tracks"] = []
    for track in layout.tracks:
        control = track.pairs[0].control
        record = {"id": track.id, "zone": track.zone_id, "pairs": track.n_pairs}
        if control.kind == ControlKind.DEDICATED:
            record["dedicated"] = True
        else:
            record["bank"] = track.bank_id
            if control.kind == ControlKind.STATIC_SET:
                record["static_set"] = control.ref
        record["storage_allowed"] = track.storage_allowed
        record["cooling_beam_axis"] = track.cooling_beam_axis
        document["tracks"].append(record)
    document["junctions"] = [
        {
            "id": junction.id,
            "kind": junction.kind.value,
            "arms": list(junction.arm_track_ids),
            "ends": list(junction.arm_ends),
            "extra_pair_budget": junction.extra_pair_budget,
        }
        for junction in layout.junctions
    ]
    document["dac_banks"] = [{"id": bank.id, "pairs": bank.n_independent_dac_pairs} for bank in layout.dac_banks]
    document["static_sets"] = [
        {"id": static.id, "zone": static.zone_id, "pairs": static.n_pairs} for static in layout.static_voltage_sets
    ]
    return document


def save_layout(layout: TrapLayout, path: str | Path) -> Path:
    return write_json(path, layout_to_document(layout))


def auto_qubit_map(n_logical: int, layout: TrapLayout, params: MachineParams) -> dict[int, CellRef]:
    """Fill memory cells in zone order, ``qubits_per_string`` qubits per string."""
    per_cell = [
        (zone, zone.cell_capacity_qubit_ions // params.ions_per_string)
        for zone in layout.zones_of_kind(ZoneKind.MEMORY)
    ]
    slots = ((zone.id, cell, slot) for zone, strings in per_cell for cell in zone.cells() for slot in range(strings))
    mapping: dict[int, CellRef] = {}
    current: Optional[tuple[str, tuple[int, int], int]] = None
    for qubit in range(n_logical):
        if qubit % params.qubits_per_string == 0:
            current = next(slots, None)
            if current is None:
                raise CapacityExceeded(f"{n_logical} logical qubits exceed the layout's memory capacity")
        zone_id, cell, slot = current  # type: ignore[misc]
        mapping[qubit] = CellRef(zone_id, cell, slot)
    return mapping


def check_capacity(circuit: Circuit, layout: TrapLayout, params: MachineParams) -> None:
    """Every mapped cell must exist and hold its strings within the cell capacity."""
    per_string: dict[str, int] = {}
    for qubit, ref in circuit.qubit_map.items():
        try:
            zone = layout.zone(ref.zone_id)
        except KeyError:
            raise ValidationError(f"qubit {qubit} maps to unknown zone {ref.zone_id}", invariant="referenced cells exist")
        if zone.kind != ZoneKind.MEMORY or not zone.has_cell(ref.cell):
            raise ValidationError(f"qubit {qubit} maps to missing cell {ref.cell} of {ref.zone_id}", invariant="referenced cells exist")
        strings_per_cell = zone.cell_capacity_qubit_ions // params.ions_per_string
        if ref.slot >= strings_per_cell:
            raise CapacityExceeded(f"cell {ref.cell} of {ref.zone_id} holds {strings_per_cell} strings", cell=ref.string_id)
        per_string[ref.string_id] = per_string.get(ref.string_id, 0) + 1
    for string_id, count in per_string.items():
        if count > params.qubits_per_string:
            raise CapacityExceeded(
                f"string {string_id} holds {params.qubits_per_string} qubits, {count} mapped", cell=string_id
            )


def circuit_from_document(raw: Any, layout: TrapLayout, params: MachineParams, source: str = "<circuit>") -> Circuit:
    if isinstance(raw, list):
        raw = {"ops": raw}
    try:
        document = CircuitDocument.model_validate(raw)
    except PydanticValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{source}: {where}: {first['msg']}", path=source) from e
    ops = tuple(_op_from_record(record, source) for record in document.ops)
    n_logical = len({q for op in ops for q in op.qubits})
    if document.qubit_map is not None:
        qubit_map = {q: CellRef(ref.zone, ref.cell, ref.slot) for q, ref in document.qubit_map.items()}
    else:
        qubit_map = auto_qubit_map(n_logical, layout, params)
    circuit = Circuit(ops, qubit_map)
    check_capacity(circuit, layout, params)
    return circuit


def _op_from_record(record: OpRecord, source: str) -> CircuitOp:
    name = record.op.lower()
    if name not in OP_NAMES:
        raise ParseError(f"{source}: unknown operation '{record.op}'", path=source)
    return CircuitOp(OP_NAMES[name], tuple(record.q), name)


def load_circuit(path: str | Path, layout: TrapLayout, params: MachineParams) -> Circuit:
    circuit = circuit_from_document(read_json(path), layout, params, source=str(path))
    logger.info(f"Loaded circuit {path}: {len(circuit.ops)} operations on {circuit.n_logical} qubits")
    return circuit
