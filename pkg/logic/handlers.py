"""Handler functions that connect CLI subcommands to service functions."""
from argparse import Namespace
from pathlib import Path
from typing import Any

from logic import service
from model.dtos import DetectionBudget, RunConfig


def handle_estimate(args: Namespace) -> dict[str, Any]:
    """Handle the resource estimate request."""
    return service.estimate_service(args.layout, args.export_layout)


def handle_simulate(args: Namespace) -> dict[str, Any]:
    """Handle a simulation run or seed sweep."""
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()] if args.seeds else None
    config = RunConfig(
        layout=args.layout,
        circuit=args.circuit,
        params=args.params,
        out_dir=Path(args.out_dir),
        formats=args.format,
        seed=args.seed,
        seeds=seeds,
        jobs=args.jobs,
    )
    return service.simulate_service(config)


def handle_model(args: Namespace) -> dict[str, Any]:
    """Handle the architecture model calculators."""
    if args.model == "shor":
        return service.shor_service(args.arch, args.clock, args.n)
    if args.model == "kappa":
        return service.kappa_service(args.coherence, args.cycle, args.fraction)
    if args.model == "rent":
        return service.rent_service(args.K, args.r, args.B, args.scale)
    if args.model == "throughput":
        return service.throughput_service(args.params)
    if args.model == "syndrome":
        return service.syndrome_service(args.n, args.t2q, args.ceil)
    if args.model == "lo":
        return service.lo_service(args.frequency, args.target)
    if args.model == "dacram":
        return service.dacram_service(args.ramp, args.period, args.bits, args.waveforms)
    if args.model == "steane":
        return service.steane_service(args.t2q, args.t_correct)
    return service.detection_service(
        DetectionBudget(
            scatter_rate_Hz=args.scatter_rate,
            detection_time_s=args.time,
            collection_efficiency=args.collection,
            detector_efficiency=args.detector,
            clicks_required=args.clicks,
            d_state_lifetime_s=args.lifetime,
            n_ghz_ancillas=args.ancillas,
        )
    )


def handle_physics(args: Namespace) -> dict[str, Any]:
    """Handle the appendix physics calculators."""
    if args.calc == "coil":
        return service.coil_service(args.kind, args.tolerance, args.diagonal)
    if args.calc == "vacuum":
        return service.vacuum_service(args.ions, args.pressure, args.gas, args.temperature)
    if args.calc == "capacitance":
        return service.capacitance_service(args.area, args.thickness, args.eps_r, args.c_seg, args.c_shunt)
    if args.calc == "clock":
        return service.clock_service(args.sensitivity, args.delta_b, args.bias)
    return service.beam_service(args.power, args.w0_ref, args.w0_new)


def handle_species(args: Namespace) -> dict[str, Any]:
    """Handle species triple enumeration."""
    return service.species_triples_service(args.surface, args.max_ratio, args.all_detections)


def handle_plot(args: Namespace) -> dict[str, Any]:
    """Handle timeline plotting from a JSONL trace."""
    return service.plot_timeline_service(args.trace, args.svg_out)
