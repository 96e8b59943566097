"""Tests for the layout model, the preset and circuit loading."""
import json

import pytest

from model.dtos import MachineParams
from qvn.core.ions import GateKind
from qvn.core.layout import ZoneKind
from qvn.core.loader import (
    auto_qubit_map,
    circuit_from_document,
    layout_from_document,
    layout_to_document,
    load_layout,
    save_layout,
)
from qvn.core.preset import quantum4004_preset, resource_table
from qvn.utils.exceptions import CapacityExceeded, IoError, ParseError, ValidationError
from tests.helpers import small_layout, small_layout_document


def test_preset_totals():
    """Test that the preset reproduces the per-region segment and DAC table."""
    layout = quantum4004_preset()

    assert layout.total_segments == 56730
    assert layout.total_dacs == 276
    assert layout.n_cells == 2048
    assert layout.capacity_qubit_ions == 32768
    assert len(layout.zones_of_kind(ZoneKind.DETECTION)) == 3
    assert len(layout.zones_of_kind(ZoneKind.MEMORY)) == 3


def test_preset_zone_values():
    """Test the stored values of individual preset zones."""
    layout = quantum4004_preset()

    storage = layout.zone("storage")
    assert (storage.segment_count, storage.independent_dac_count, storage.size_ul) == (2734, 10, (35, 168))
    qalu = layout.zone("qalu")
    assert (qalu.segment_count, qalu.independent_dac_count, qalu.size_ul) == (298, 150, (47, 70))
    big = layout.zone("mem32x40")
    assert (big.segment_count, big.independent_dac_count, big.grid) == (31486, 30, (32, 40))
    assert layout.zone("connecting").size_ul is None


def test_resource_table_dimensions():
    """Test physical size, diagonal and per-ion ratios of the preset."""
    report = resource_table(quantum4004_preset())

    assert report.size_ul == (486, 534)
    assert report.size_mm[0] == pytest.approx(38.9, abs=0.1)
    assert report.size_mm[1] == pytest.approx(42.7, abs=0.1)
    assert report.diagonal_mm == pytest.approx(57.8, abs=0.1)
    assert report.segments_per_qubit_ion == pytest.approx(56730 / 32768)
    assert report.segments_per_qubit_ion < 2
    assert report.qubit_ions_per_dac == pytest.approx(118.7, abs=0.1)
    assert sum(zone.segments for zone in report.zones) == report.total_segments


def test_resource_table_dimensions_scale_with_unit_length():
    """Test that millimetre sizes equal unit lengths times the unit length."""
    document = small_layout_document()
    document["unit_length_m"] = 1e-4
    report = resource_table(layout_from_document(document))

    qalu = next(zone for zone in report.zones if zone.id == "qalu")
    assert qalu.size_mm == pytest.approx((4.0, 4.0))


def test_layout_round_trip(tmp_path):
    """Test that an exported preset loads back to the same document."""
    layout = quantum4004_preset()
    path = save_layout(layout, tmp_path / "layout.json")

    reloaded = load_layout(path)

    assert layout_to_document(reloaded) == layout_to_document(layout)
    assert reloaded.total_segments == 56730


def test_preset_route_from_memory_to_qalu():
    """Test the shortest track/junction route out of the first memory zone."""
    layout = quantum4004_preset()
    transport = layout.transport_track("mem16x24a")

    route = layout.route(transport.id, layout.qalu_track().id)

    assert transport.id == 6
    assert route == [("track", 6), ("junction", 2), ("track", 12), ("junction", 1), ("track", 1)]


def test_cell_pairs_are_disjoint():
    """Test that every memory cell owns its own three segment pairs."""
    layout = small_layout()
    zone = layout.zone("mem")

    pairs = [layout.cell_pairs("mem", cell) for cell in zone.cells()]
    flat = [pair for cell in pairs for pair in cell]

    assert all(len(cell) == 3 for cell in pairs)
    assert len(set(flat)) == len(flat)
    assert min(flat) >= layout.n_track_pairs


def test_minimal_layout_is_valid():
    """Test a single three-pair track in a one-cell memory zone."""
    document = {
        "zones": [{"id": "m", "kind": "memory", "segments": 6, "dacs": 1, "grid": [1, 1], "cell_capacity": 16}],
        "tracks": [{"id": 1, "zone": "m", "pairs": 3}],
    }

    layout = layout_from_document(document)

    assert layout.track(1).n_pairs == 3
    assert layout.bank(layout.track(1).bank_id).n_independent_dac_pairs == 4
    assert layout.layout_size_ul == (0, 0)


class TestLayoutValidation:
    """Test cases for layout invariants."""

    def _invariant(self, document):
        with pytest.raises(ValidationError) as excinfo:
            layout_from_document(document)
        return excinfo.value.invariant

    def test_unreachable_cell(self):
        """Test a memory zone whose track never meets the QALU."""
        document = small_layout_document()
        document["zones"].append(
            {"id": "mem2", "kind": "memory", "segments": 20, "dacs": 2, "grid": [1, 1], "cell_capacity": 16}
        )
        document["tracks"].append({"id": 4, "zone": "mem2", "pairs": 5, "bank": "mem"})

        assert self._invariant(document) == "unreachable cell"

    def test_short_track(self):
        """Test that a track needs three pairs to confine a well."""
        document = small_layout_document()
        document["tracks"][1]["pairs"] = 2

        assert self._invariant(document) == "track length"

    def test_memory_zone_without_grid(self):
        """Test that memory zones need a cell grid."""
        document = small_layout_document()
        del document["zones"][2]["grid"]

        assert self._invariant(document) == "memory grid"

    def test_y_junction_arm_count(self):
        """Test that a Y junction joins exactly three arms."""
        document = small_layout_document()
        document["junctions"][0]["arms"] = [1, 2, 3, 1]
        document["junctions"][0]["ends"] = ["head"] * 4

        assert self._invariant(document) == "arm count"

    def test_segment_count_below_tracks(self):
        """Test that a zone cannot declare fewer segments than its tracks model."""
        document = small_layout_document()
        document["zones"][2]["segments"] = 10

        assert self._invariant(document) == "segment count"

    def test_storage_on_cooling_axis(self):
        """Test that storage tracks cannot lie on the cooling-beam axis."""
        document = small_layout_document()
        document["tracks"][2]["storage_allowed"] = True

        assert self._invariant(document) == "storage orientation"

    def test_duplicate_track_id(self):
        """Test that ids are unique per entity type."""
        document = small_layout_document()
        document["tracks"][1]["id"] = 1

        assert self._invariant(document) == "duplicate id"

    def test_disconnected_tracks(self):
        """Test that a stray track splits the layout graph."""
        document = small_layout_document()
        document["tracks"].append({"id": 4, "zone": "det", "pairs": 5, "bank": "det"})

        assert self._invariant(document) == "disconnected"

    def test_undeclared_bank(self):
        """Test that tracks may only use declared DAC banks."""
        document = small_layout_document()
        document["tracks"][0]["bank"] = "nope"

        assert self._invariant(document) == "unknown bank"

    def test_unknown_field_is_parse_error(self):
        """Test that schema violations surface as parse errors."""
        document = small_layout_document()
        document["zones"][0]["colour"] = "red"

        with pytest.raises(ParseError):
            layout_from_document(document)


def test_load_layout_missing_file(tmp_path):
    """Test that a missing layout file is an I/O error."""
    with pytest.raises(IoError):
        load_layout(tmp_path / "absent.json")


def test_load_layout_invalid_json(tmp_path):
    """Test that malformed JSON is a parse error naming the file."""
    path = tmp_path / "broken.json"
    path.write_text("{ not json", encoding="utf-8")

    with pytest.raises(ParseError) as excinfo:
        load_layout(path)

    assert excinfo.value.path == str(path)


class TestCircuitLoading:
    """Test cases for circuit documents and qubit maps."""

    def test_bare_op_list(self):
        """Test that a bare list of ops is accepted and auto-mapped."""
        layout = small_layout()
        raw = [{"op": "cx", "q": [0, 1]}, {"op": "H", "q": [2]}, {"op": "measure", "q": [2]}]

        circuit = circuit_from_document(raw, layout, MachineParams())

        assert [op.kind for op in circuit.ops] == [GateKind.TWO_QUBIT, GateKind.SINGLE_QUBIT, GateKind.MEASURE]
        assert circuit.ops[1].name == "h"
        assert circuit.string_of(0) == circuit.string_of(2) == "mem:0,0:0"

    def test_auto_map_fills_strings_in_order(self):
        """Test that four qubits share a string and two strings share a cell."""
        mapping = auto_qubit_map(9, small_layout(), MachineParams())

        assert {mapping[q].string_id for q in range(4)} == {"mem:0,0:0"}
        assert mapping[4].string_id == "mem:0,0:1"
        assert mapping[8].string_id == "mem:1,0:0"

    def test_explicit_qubit_map(self):
        """Test that a qubit map is taken as given."""
        raw = {
            "ops": [{"op": "cx", "q": [0, 1]}],
            "qubit_map": {"0": {"zone": "mem", "cell": [3, 1]}, "1": {"zone": "mem", "cell": [3, 1], "slot": 1}},
        }

        circuit = circuit_from_document(raw, small_layout(), MachineParams())

        assert circuit.string_of(0) == "mem:3,1:0"
        assert circuit.string_of(1) == "mem:3,1:1"

    def test_sparse_qubit_ids(self):
        """Test that qubit ids must be dense."""
        raw = [{"op": "cx", "q": [0, 1]}, {"op": "h", "q": [5]}]

        with pytest.raises(ValidationError):
            circuit_from_document(raw, small_layout(), MachineParams())

    def test_wrong_arity(self):
        """Test that a two-qubit gate needs two distinct qubits."""
        with pytest.raises(ValidationError):
            circuit_from_document([{"op": "cx", "q": [0]}], small_layout(), MachineParams())

    def test_unknown_operation(self):
        """Test that unknown op names are parse errors."""
        with pytest.raises(ParseError):
            circuit_from_document([{"op": "toffoli", "q": [0, 1]}], small_layout(), MachineParams())

    def test_too_many_qubits(self):
        """Test that the auto map stops at the memory capacity."""
        raw = [{"op": "h", "q": [q]} for q in range(65)]

        with pytest.raises(CapacityExceeded):
            circuit_from_document(raw, small_layout(), MachineParams())

    def test_slot_beyond_cell(self):
        """Test that a cell holds only two strings of eight ions."""
        raw = {"ops": [{"op": "h", "q": [0]}], "qubit_map": {"0": {"zone": "mem", "cell": [0, 0], "slot": 2}}}

        with pytest.raises(CapacityExceeded):
            circuit_from_document(raw, small_layout(), MachineParams())

    def test_missing_cell(self):
        """Test that mapped cells must exist."""
        raw = {"ops": [{"op": "h", "q": [0]}], "qubit_map": {"0": {"zone": "mem", "cell": [9, 0]}}}

        with pytest.raises(ValidationError):
            circuit_from_document(raw, small_layout(), MachineParams())

    def test_load_circuit_file(self, tmp_path):
        """Test loading a circuit from disk."""
        from qvn.core.loader import load_circuit

        path = tmp_path / "circuit.json"
        path.write_text(json.dumps([{"op": "init", "q": [0]}]), encoding="utf-8")

        circuit = load_circuit(path, small_layout(), MachineParams())

        assert circuit.ops[0].kind == GateKind.INIT
        assert circuit.n_logical == 1
