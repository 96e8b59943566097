"""Small layouts and parameter sets shared by the test modules."""
import copy
from typing import Any

from model.dtos import MachineParams
from qvn.core.layout import TrapLayout
from qvn.core.loader import layout_from_document

# QALU, one detection zone and a 4x2 memory zone around a single Y junction
SMALL_LAYOUT: dict[str, Any] = {
    "unit_length_m": 8.0e-5,
    "zones": [
        {"id": "qalu", "kind": "qalu", "size_ul": [40, 40], "segments": 40, "dacs": 8},
        {"id": "det", "kind": "detection", "size_ul": [20, 20], "segments": 40, "dacs": 4},
        {"id": "mem", "kind": "memory", "size_ul": [100, 50], "segments": 200, "dacs": 4, "grid": [4, 2], "cell_capacity": 16},
    ],
    "tracks": [
        {"id": 1, "zone": "qalu", "pairs": 10, "bank": "qalu", "cooling_beam_axis": True},
        {"id": 2, "zone": "det", "pairs": 10, "bank": "det"},
        {"id": 3, "zone": "mem", "pairs": 10, "bank": "mem", "cooling_beam_axis": True},
    ],
    "junctions": [
        {"id": 1, "kind": "Y", "arms": [1, 2, 3], "ends": ["head", "head", "head"], "extra_pair_budget": 2},
    ],
    "dac_banks": [{"id": "qalu", "pairs": 4}, {"id": "det", "pairs": 4}, {"id": "mem", "pairs": 4}],
    "static_sets": [{"id": "mem-S", "zone": "mem", "pairs": 3}],
}


def small_layout_document() -> dict[str, Any]:
    return copy.deepcopy(SMALL_LAYOUT)


def small_layout() -> TrapLayout:
    return layout_from_document(small_layout_document(), source="small")


def fast_params(**overrides: Any) -> MachineParams:
    """Machine parameters with nanosecond transport so the QALU sets the pace."""
    values: dict[str, Any] = {"shuttle_step_s": 1e-9, "mux_switch_s": 1e-9}
    values.update(overrides)
    return MachineParams(**values)
