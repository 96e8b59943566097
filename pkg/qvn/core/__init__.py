from qvn.core.layout import TrapLayout, Zone, ZoneKind, Track, Junction, JunctionKind, SegmentPair
from qvn.core.loader import load_layout, save_layout, layout_to_document, load_circuit
from qvn.core.preset import quantum4004_preset, resource_table

__all__ = [
    "TrapLayout",
    "Zone",
    "ZoneKind",
    "Track",
    "Junction",
    "JunctionKind",
    "SegmentPair",
    "load_layout",
    "save_layout",
    "layout_to_document",
    "load_circuit",
    "quantum4004_preset",
    "resource_table",
]
