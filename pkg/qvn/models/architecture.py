"""Closed-form architectural models."""
import math
from typing import Callable

from scipy.optimize import brentq

from logic.logging_config import configured_logger as logger
from model.dtos import KappaInputs, MachineParams, RentParams, ShorKind, ShorModel
from qvn.utils.units import per_second, to_ns

# Steane code: 24 entangling gates and one correction per 7 data qubits
STEANE_GATES_PER_BLOCK = 24
STEANE_DETECTIONS_PER_BLOCK = 6
STEANE_BLOCK = 7
DAC_MIN_SAMPLE_PERIOD_S = 1e-8


def rent_pins(p: RentParams) -> float:
    """Terminal count ``K * B**r``."""
    return p.K * p.B**p.r


def rent_growth_factor(r: float, scale: float) -> float:
    """Factor by which pins grow when the element count is multiplied by ``scale``."""
    return scale**r


def kappa(k: KappaInputs) -> float:
    value = k.coherence_time_s * k.qec_fraction / k.qec_cycle_per_qubit_s
    if value <= 1:
        logger.warning(f"kappa={value:.3g}: no headroom to serialize error correction")
    return value


def kappa_range(
    coherence_time_s: float, qec_cycle_per_qubit_s: float, fractions: tuple[float, float] = (0.01, 0.1)
) -> tuple[float, float]:
    """κ at both ends of the usable-coherence fraction interval."""
    low, high = fractions
    return (
        kappa(KappaInputs(coherence_time_s=coherence_time_s, qec_fraction=low, qec_cycle_per_qubit_s=qec_cycle_per_qubit_s)),
        kappa(KappaInputs(coherence_time_s=coherence_time_s, qec_fraction=high, qec_cycle_per_qubit_s=qec_cycle_per_qubit_s)),
    )


def steane_cycle(t_2q_s: float, t_correct_s: float) -> float:
    return (STEANE_GATES_PER_BLOCK * t_2q_s + t_correct_s) / STEANE_BLOCK


_SHOR_STEPS: dict[ShorKind, Callable[[float], float]] = {
    ShorKind.BCDP: lambda n: 54 * n**3,
    ShorKind.NTC: lambda n: 20 * n**2 * math.log2(n),
    ShorKind.AC: lambda n: 9 * n * math.log2(n) ** 2,
}


def shor_steps(kind: ShorKind, n_bits: float) -> float:
    return _SHOR_STEPS[kind](n_bits)


def shor_time(model: ShorModel, n_bits: float) -> float:
    """Factoring time in seconds: logical steps over the logical clock."""
    if n_bits < 2:
        raise ValueError("n_bits must be at least 2")
    return shor_steps(model.kind, n_bits) / model.logical_clock_Hz


def shor_qubits(model: ShorModel, n_bits: int) -> int:
    if model.kind == ShorKind.BCDP:
        return 5 * n_bits + 3
    return 2 * n_bits**2


def shor_crossover(a: ShorModel, b: ShorModel, low: float = 2.0, high: float = 1e9) -> float:
    """
    Bit length at which ``a`` and ``b`` take equal time.

    Args:
        a: First architecture and clock
        b: Second architecture and clock
        low: Lower end of the bracket
        high: Upper end of the bracket

    Returns:
        float: Root of ``log(time_a / time_b)`` inside the bracket
    """
    def gap(n: float) -> float:
        return math.log(shor_time(a, n)) - math.log(shor_time(b, n))

    return float(brentq(gap, low, high, xtol=1e-9, rtol=1e-12))


def machine_throughput(params: MachineParams) -> dict[str, float]:
    return {
        "oneq_per_s": per_second(params.n_parallel_1q, params.t_1q_s),
        "twoq_per_s": per_second(1, params.t_2q_s),
    }


def syndrome_sweep(n_physical_qubits: int, t_2q_s: float, ceil_blocks: bool = False) -> dict[str, float]:
    """
    Gate count and time to measure every stabilizer once across the machine.

    Fractional gate counts follow ``n * 24 / 7``; ``ceil_blocks`` rounds up to whole
    seven-qubit blocks instead.
    """
    if ceil_blocks:
        blocks: float = math.ceil(n_physical_qubits / STEANE_BLOCK)
    else:
        blocks = n_physical_qubits / STEANE_BLOCK
    gates = blocks * STEANE_GATES_PER_BLOCK
    detections = blocks * STEANE_DETECTIONS_PER_BLOCK
    sweep = gates * t_2q_s
    return {
        "total_2q_gates": gates,
        "sweep_time_s": sweep,
        "detections": detections,
        "detection_interval_s": sweep / detections,
    }


def lo_stability_required(transition_Hz: float, coherence_target_s: float) -> float:
    """Fractional frequency stability keeping one radian of drift over the target time."""
    return 1.0 / (transition_Hz * coherence_target_s)


def dac_ram_requirement(
    ramp_duration_s: float, sample_period_s: float, bits_per_sample: int, n_waveforms: int
) -> int:
    """Bytes of waveform memory for ``n_waveforms`` ramps."""
    if sample_period_s < DAC_MIN_SAMPLE_PERIOD_S:
        raise ValueError(f"sample period {sample_period_s} s is faster than the DAC limit {DAC_MIN_SAMPLE_PERIOD_S} s")
    if ramp_duration_s <= 0:
        return 0
    period_ns = to_ns(sample_period_s)
    samples = -(-to_ns(ramp_duration_s) // period_ns)
    return math.ceil(samples * bits_per_sample * n_waveforms / 8)
