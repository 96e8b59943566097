"""The Quantum 4004 preset and per-zone resource accounting."""
import math

from database.repository import preset_path
from logic.logging_config import configured_logger as logger
from model.dtos import ResourceReport, ZoneResources
from qvn.core.layout import TrapLayout
from qvn.core.loader import load_layout

QUANTUM_4004 = "quantum4004"


def load_preset(name: str) -> TrapLayout:
    return load_layout(preset_path(name))


def quantum4004_preset() -> TrapLayout:
    """
    Quantum 4004 layout: storage, QALU, three detection zones, two 16x24 and one
    32x40 memory zone and the connecting tracks, carrying the per-region segment
    and DAC counts as stored data. Each memory cell holds two strings of 8 qubit ions.
    """
    return load_preset(QUANTUM_4004)


def resource_table(layout: TrapLayout) -> ResourceReport:
    """
    Per-zone and total resources with the physical trap extent.

    Args:
        layout: Validated layout

    Returns:
        ResourceReport: Segment/DAC totals, dimensions and per-qubit-ion ratios
    """
    mm_per_ul = layout.unit_length_m * 1e3
    zones = [
        ZoneResources(
            id=zone.id,
            kind=zone.kind.value,
            segments=zone.segment_count,
            dacs=zone.independent_dac_count,
            size_ul=zone.size_ul,
            size_mm=(zone.size_ul[0] * mm_per_ul, zone.size_ul[1] * mm_per_ul) if zone.size_ul else None,
            cells=zone.n_cells,
            capacity_qubit_ions=zone.capacity_qubit_ions,
        )
        for zone in layout.zones
    ]
    width_ul, height_ul = layout.layout_size_ul
    width_mm, height_mm = width_ul * mm_per_ul, height_ul * mm_per_ul
    capacity = layout.capacity_qubit_ions
    total_segments = layout.total_segments
    total_dacs = layout.total_dacs
    report = ResourceReport(
        unit_length_m=layout.unit_length_m,
        zones=zones,
        total_segments=total_segments,
        total_dacs=total_dacs,
        size_ul=(width_ul, height_ul),
        size_mm=(width_mm, height_mm),
        diagonal_mm=math.hypot(width_mm, height_mm),
        capacity_qubit_ions=capacity,
        segments_per_qubit_ion=total_segments / capacity if capacity else None,
        qubit_ions_per_dac=capacity / total_dacs if total_dacs else None,
    )
    logger.debug(f"Resource table: {total_segments} segments, {total_dacs} DACs, {capacity} qubit ions")
    return report
