"""Command-line surface: ``qvn <command> ...``; JSON on stdout, logs on stderr."""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from pydantic import ValidationError as PydanticValidationError

from logic import handlers
from logic.config import settings
from logic.logging_config import configure_logging, configured_logger as logger
from logic.performance_monitor import get_global_monitor
from qvn import __version__
from qvn.utils.exceptions import IoError, QVNError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2

SCHEMA_HELP = """\
Input files:
  layout   JSON {"unit_length_m", "size_ul", "zones": [...], "tracks": [...], "junctions": [...],
           "dac_banks": [...], "static_sets": [...]} or preset:quantum4004
  circuit  JSON list [{"op": "cx", "q": [0, 1]}, {"op": "h", "q": [2]}, {"op": "measure", "q": [2]}]
           or {"ops": [...], "qubit_map": {"0": {"zone": ..., "cell": [col, row], "slot": 0}}}
  params   JSON object of machine parameters (t_1q_s, t_2q_s, shuttle_step_s, mux_switch_s, ...)
"""


class UsageError(Exception):
    pass


class QvnArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting so usage errors map onto the validation exit code."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _add_model_parsers(sub) -> None:
    models = sub.add_parser("model", help="architecture models").add_subparsers(dest="model", required=True)

    p = models.add_parser("shor", help="Shor factoring time and qubits")
    p.add_argument("--arch", choices=["BCDP", "NTC", "AC"], required=True)
    p.add_argument("--clock", type=float, required=True, help="logical clock in Hz")
    p.add_argument("--n", type=int, required=True, help="bit length")

    p = models.add_parser("kappa", help="serialization headroom")
    p.add_argument("--coherence", type=float, required=True, help="coherence time in s")
    p.add_argument("--cycle", type=float, required=True, help="QEC cycle per qubit in s")
    p.add_argument("--fraction", type=float, help="usable coherence fraction; default reports 0.01-0.1")

    p = models.add_parser("rent", help="Rent's rule terminal count")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--scale", type=float, help="report pin growth for this element-count factor")

    p = models.add_parser("throughput", help="gate rates and pipeline beat")
    p.add_argument("--params", help="machine parameter JSON")

    p = models.add_parser("syndrome", help="machine-wide syndrome sweep")
    p.add_argument("--n", type=int, required=True, help="physical qubits")
    p.add_argument("--t2q", type=float, default=20e-6)
    p.add_argument("--ceil", action="store_true", help="round up to whole seven-qubit blocks")

    p = models.add_parser("lo", help="local-oscillator stability")
    p.add_argument("--frequency", type=float, required=True, help="transition frequency in Hz")
    p.add_argument("--target", type=float, default=86400.0, help="coherence target in s")

    p = models.add_parser("dacram", help="DAC waveform memory")
    p.add_argument("--ramp", type=float, required=True)
    p.add_argument("--period", type=float, required=True)
    p.add_argument("--bits", type=int, default=16)
    p.add_argument("--waveforms", type=int, default=1)

    p = models.add_parser("steane", help="per-qubit Steane QEC cycle")
    p.add_argument("--t2q", type=float, default=20e-6)
    p.add_argument("--t-correct", dest="t_correct", type=float, default=0.0)

    p = models.add_parser("detection", help="photon and majority-vote budget")
    p.add_argument("--scatter-rate", dest="scatter_rate", type=float, default=1e7)
    p.add_argument("--time", type=float, default=1e-5)
    p.add_argument("--collection", type=float, default=0.1)
    p.add_argument("--detector", type=float, default=0.5)
    p.add_argument("--clicks", type=float, default=5)
    p.add_argument("--lifetime", type=float, default=1.0)
    p.add_argument("--ancillas", type=int, default=1)


def _add_physics_parsers(sub) -> None:
    physics = sub.add_parser("physics", help="appendix physics").add_subparsers(dest="calc", required=True)

    p = physics.add_parser("coil", help="coil homogeneity")
    p.add_argument("--kind", choices=["Helmholtz", "Maxwell"], default="Helmholtz")
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--diagonal", type=float, help="trap diagonal in m")

    p = physics.add_parser("vacuum", help="collision rate and sublimation pressure")
    p.add_argument("--ions", type=int, required=True)
    p.add_argument("--pressure", type=float, required=True, help="mbar")
    p.add_argument("--gas", choices=["H2", "He4", "He3"])
    p.add_argument("--temperature", type=float, help="K")

    p = physics.add_parser("capacitance", help="shunt plate capacitance")
    p.add_argument("--area", type=float, default=1e-8, help="m^2")
    p.add_argument("--thickness", type=float, default=1e-6, help="m")
    p.add_argument("--eps-r", dest="eps_r", type=float, default=3.8)
    p.add_argument("--c-seg", dest="c_seg", type=float, help="segment capacitance in F")
    p.add_argument("--c-shunt", dest="c_shunt", type=float, default=0.0)

    p = physics.add_parser("clock", help="clock-transition Zeeman shift")
    p.add_argument("--sensitivity", type=float, default=1e5, help="Hz/mT^2")
    p.add_argument("--delta-b", dest="delta_b", type=float, required=True, help="mT")
    p.add_argument("--bias", type=float, help="bias field in mT")

    p = physics.add_parser("beam", help="beam power at a new waist")
    p.add_argument("--power", type=float, required=True, help="W")
    p.add_argument("--w0-ref", dest="w0_ref", type=float, required=True)
    p.add_argument("--w0-new", dest="w0_new", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = QvnArgumentParser(prog="qvn", description="Trapped-ion QCCD simulator and resource estimator")
    parser.add_argument("--version", action="version", version=f"qvn {__version__}")
    parser.add_argument("--out", help="write the JSON result to a file instead of stdout")
    parser.add_argument("--timings", action="store_true", help="log a timing summary at exit")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper, help="override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=QvnArgumentParser)

    p = sub.add_parser("estimate", help="resource table of a layout")
    p.add_argument("--layout", default="preset:quantum4004")
    p.add_argument("--export-layout", dest="export_layout", help="write the layout back as JSON")
    p.set_defaults(handler=handlers.handle_estimate)

    p = sub.add_parser("simulate", help="run the discrete-event simulator")
    p.add_argument("--layout", default="preset:quantum4004")
    p.add_argument("--circuit", help="circuit JSON")
    p.add_argument("--params", help="machine parameter JSON")
    p.add_argument("--out-dir", dest="out_dir", default="qvn_out")
    p.add_argument("--format", action="append", choices=["jsonl", "csv", "svg_timeline"])
    p.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    p.add_argument("--seeds", help="comma-separated seeds for a sweep")
    p.add_argument("--jobs", type=int, default=settings.DEFAULT_JOBS)
    p.set_defaults(handler=handlers.handle_simulate)

    _add_model_parsers(sub)
    sub.choices["model"].set_defaults(handler=handlers.handle_model)
    _add_physics_parsers(sub)
    sub.choices["physics"].set_defaults(handler=handlers.handle_physics)

    species = sub.add_parser("species", help="ion species selection").add_subparsers(dest="species_cmd", required=True)
    p = species.add_parser("triples", help="(qubit, detection, cooling) triples")
    p.add_argument("--surface", choices=["gold", "aluminum"], default="aluminum")
    p.add_argument("--max-ratio", dest="max_ratio", type=float, default=3.0)
    p.add_argument("--all-detections", dest="all_detections", action="store_true")
    sub.choices["species"].set_defaults(handler=handlers.handle_species)

    plot = sub.add_parser("plot", help="trace plots").add_subparsers(dest="plot_cmd", required=True)
    p = plot.add_parser("timeline", help="SVG timeline of a JSONL trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--out", dest="svg_out", required=True)
    sub.choices["plot"].set_defaults(handler=handlers.handle_plot)
    return parser


def _emit(result: Any, out: Optional[str]) -> None:
    text = json.dumps(result, indent=2)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Wrote result to {out}")
    else:
        sys.stdout.write(text + "\n")


def _fail(code: int, error: BaseException) -> int:
    logger.error(f"{type(error).__name__}: {error}")
    sys.stderr.write(json.dumps({"error": str(error), "type": type(error).__name__}) + "\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one CLI command.

    Returns:
        int: 0 on success, 1 on invalid input or usage, 2 on I/O failure
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e}\n\n{parser.format_usage()}\n{SCHEMA_HELP}")
        return EXIT_INVALID

    if args.log_level:
        configure_logging(args.log_level)
    if args.command == "simulate" and not args.format:
        args.format = list(settings.TRACE_FORMATS)
    handler: Callable[[argparse.Namespace], Any] = args.handler
    try:
        _emit(handler(args), args.out)
    except IoError as e:
        return _fail(EXIT_IO, e)
    except OSError as e:
        return _fail(EXIT_IO, e)
    except (QVNError, PydanticValidationError, ValueError) as e:
        return _fail(EXIT_INVALID, e)
    finally:
        if args.timings:
            get_global_monitor().log_summary()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
