"""Service layer: composes domain calls into JSON-ready documents."""
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError as PydanticValidationError

from database.repository import read_json, write_json
from logic.logging_config import configured_logger as logger
from logic.performance_monitor import get_global_monitor
from model.dtos import (
    DetectionBudget,
    KappaInputs,
    MachineParams,
    RentParams,
    RunConfig,
    ShorKind,
    ShorModel,
)
from qvn.core.ions import Circuit
from qvn.core.layout import TrapLayout
from qvn.core.loader import load_circuit, load_layout, save_layout
from qvn.core.preset import load_preset, resource_table
from qvn.models import architecture
from qvn.physics import (
    CapacitanceModel,
    CoilKind,
    CoilSystem,
    beam_power_scaling,
    clock_shift,
    collision_rate,
    dielectric_min_thickness,
    homogeneous_sphere_radius,
    plate_capacitance,
    relative_field_offset,
    required_coil_radius,
    shield_size_range,
    shunt_ratio,
    sublimation_pressure,
)
from qvn.pipeline import detection_budget, pipeline_metrics, resolve_pipeline
from qvn.sim import emit_trace, read_jsonl, run
from qvn.species import SurfaceMaterial, TripleOptions, be_exclusion_check, enumerate_triples
from qvn.utils.exceptions import ParseError
from qvn.utils.file_handler import FileHandler

monitor = get_global_monitor()


def load_layout_source(source: str) -> TrapLayout:
    """A layout file path or ``preset:<name>``."""
    if FileHandler.is_preset(source):
        return load_preset(FileHandler.preset_name(source))
    return load_layout(source)


def load_params(path: Optional[str | Path]) -> MachineParams:
    if path is None:
        return MachineParams()
    raw = read_json(path)
    try:
        return MachineParams.model_validate(raw)
    except PydanticValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{path}: {where}: {first['msg']}", path=str(path)) from e


# estimate


def estimate_service(layout_source: str, export_layout: Optional[str] = None) -> dict[str, Any]:
    with monitor.track("estimate"):
        layout = load_layout_source(layout_source)
        report = resource_table(layout)
        if export_layout:
            save_layout(layout, export_layout)
    return report.model_dump(mode="json")


# simulate


def _simulate_seed(layout: TrapLayout, circuit: Circuit, params: MachineParams, config: RunConfig, seed: int) -> dict:
    with monitor.track("simulate", work_items=len(circuit.ops)):
        trace, metrics = run(layout, circuit, params, seed)
    files = []
    for fmt in config.formats:
        name = FileHandler.trace_file_name(f"trace_seed{seed}", fmt)
        files.append(str(emit_trace(trace, config.out_dir / name, fmt)))
    document = metrics.to_document()
    files.append(str(write_json(config.out_dir / f"metrics_seed{seed}.json", document)))
    return {"seed": seed, "events": len(trace), "metrics": document, "files": files}


def simulate_service(config: RunConfig) -> dict[str, Any]:
    """
    Run the simulator once per seed; seeds run on a thread pool of ``config.jobs`` workers.

    Engines share only the immutable layout, circuit and parameters.
    """
    layout = load_layout_source(config.layout)
    params = load_params(config.params)
    if config.circuit is None:
        circuit = Circuit(())
    else:
        circuit = load_circuit(config.circuit, layout, params)
    seeds = config.seeds or [config.seed]
    FileHandler.create_directory(config.out_dir)
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        runs = list(pool.map(lambda seed: _simulate_seed(layout, circuit, params, config, seed), seeds))
    logger.info(f"Simulated {len(seeds)} seed(s) into {config.out_dir}")
    return {"runs": runs}


def plot_timeline_service(trace_path: str, out: str) -> dict[str, Any]:
    trace = read_jsonl(trace_path)
    path = emit_trace(trace, out, "svg_timeline")
    return {"svg": str(path), "events": len(trace)}


# models


def shor_service(arch: str, clock_Hz: float, n_bits: int) -> dict[str, Any]:
    model = ShorModel(kind=ShorKind(arch), logical_clock_Hz=clock_Hz)
    return {
        "arch": model.kind.value,
        "n": n_bits,
        "logical_clock_Hz": clock_Hz,
        "steps": architecture.shor_steps(model.kind, n_bits),
        "time_s": architecture.shor_time(model, n_bits),
        "qubits": architecture.shor_qubits(model, n_bits),
    }


def kappa_service(coherence_s: float, cycle_s: float, fraction: Optional[float] = None) -> dict[str, Any]:
    if fraction is not None:
        value = architecture.kappa(KappaInputs(coherence_time_s=coherence_s, qec_fraction=fraction, qec_cycle_per_qubit_s=cycle_s))
        return {"kappa": value, "fraction": fraction}
    low, high = architecture.kappa_range(coherence_s, cycle_s)
    return {"kappa_min": low, "kappa_max": high}


def rent_service(K: float, r: float, B: float, scale: Optional[float] = None) -> dict[str, Any]:
    result: dict[str, Any] = {"pins": architecture.rent_pins(RentParams(K=K, r=r, B=B))}
    if scale is not None:
        result["growth_factor"] = architecture.rent_growth_factor(r, scale)
    return result


def throughput_service(params_path: Optional[str] = None) -> dict[str, Any]:
    params = load_params(params_path)
    result: dict[str, Any] = dict(architecture.machine_throughput(params))
    result["pipeline"] = pipeline_metrics(resolve_pipeline(params)).model_dump()
    return result


def syndrome_service(n: int, t2q_s: float, ceil_blocks: bool = False) -> dict[str, Any]:
    return architecture.syndrome_sweep(n, t2q_s, ceil_blocks)


def lo_service(transition_Hz: float, target_s: float) -> dict[str, Any]:
    return {"fractional_stability": architecture.lo_stability_required(transition_Hz, target_s)}


def dacram_service(ramp_s: float, period_s: float, bits: int, waveforms: int) -> dict[str, Any]:
    return {"bytes": architecture.dac_ram_requirement(ramp_s, period_s, bits, waveforms)}


def steane_service(t2q_s: float, t_correct_s: float) -> dict[str, Any]:
    return {"cycle_per_qubit_s": architecture.steane_cycle(t2q_s, t_correct_s)}


def detection_service(budget: DetectionBudget) -> dict[str, Any]:
    return detection_budget(budget).model_dump()


# physics


def coil_service(kind: str, tolerance: float, diagonal_m: Optional[float] = None) -> dict[str, Any]:
    coil_kind = CoilKind(kind)
    with monitor.track("coil"):
        ratio = homogeneous_sphere_radius(CoilSystem(coil_kind, 1.0), tolerance)
    result: dict[str, Any] = {"kind": coil_kind.value, "rel_tolerance": tolerance, "r_over_R": ratio}
    if diagonal_m is not None:
        radius = required_coil_radius(coil_kind, diagonal_m, tolerance)
        result["coil_radius_m"] = radius
        result["shield_size_m"] = list(shield_size_range(radius))
    return result


def vacuum_service(n_ions: int, pressure_mbar: float, gas: Optional[str] = None, temperature_K: Optional[float] = None) -> dict[str, Any]:
    result: dict[str, Any] = {"collisions_per_s": collision_rate(n_ions, pressure_mbar)}
    if gas is not None and temperature_K is not None:
        result["sublimation_pressure_mbar"] = sublimation_pressure(gas, temperature_K)
    return result


def capacitance_service(
    area_m2: float, thickness_m: float, eps_r: float, c_seg_F: Optional[float] = None, c_shunt_F: float = 0.0
) -> dict[str, Any]:
    plate = plate_capacitance(area_m2, thickness_m, eps_r)
    result: dict[str, Any] = {"plate_capacitance_F": plate, "min_dielectric_thickness_m": dielectric_min_thickness()}
    if c_seg_F is not None:
        result["old_geometry_ratio"] = shunt_ratio(CapacitanceModel.old_geometry(c_seg_F, c_seg_F, eps_r))
        result["new_geometry_ratio"] = shunt_ratio(CapacitanceModel.new_geometry(c_seg_F, plate, c_shunt_F, eps_r))
    return result


def clock_service(sensitivity: float, delta_B_mT: float, bias_mT: Optional[float] = None) -> dict[str, Any]:
    result: dict[str, Any] = {"shift_Hz": clock_shift(sensitivity, delta_B_mT)}
    if bias_mT is not None:
        result["relative_offset"] = relative_field_offset(delta_B_mT, bias_mT)
    return result


def beam_service(p_ref_W: float, w0_ref_m: float, w0_new_m: float) -> dict[str, Any]:
    power = beam_power_scaling(p_ref_W, w0_ref_m, w0_new_m)
    return {"power_W": power, "factor": p_ref_W / power}


# species


def species_triples_service(surface: str, max_ratio: float, all_detections: bool = False) -> dict[str, Any]:
    options = TripleOptions(best_detection_only=not all_detections)
    triples = enumerate_triples(SurfaceMaterial(surface), max_ratio, options)
    return {
        "surface": surface,
        "max_mass_ratio": max_ratio,
        "triples": [triple.to_dict() for triple in triples],
        "be_excluded": be_exclusion_check(SurfaceMaterial(surface), max_ratio, options),
    }
