"""Clock-transition sensitivity to residual magnetic field drift."""
from __future__ import annotations

SECONDS_PER_DAY = 86_400.0


def clock_shift(sensitivity_Hz_per_mT2: float, delta_B_mT: float) -> float:
    """Second-order Zeeman shift of a clock transition, in Hz."""
    if sensitivity_Hz_per_mT2 < 0:
        raise ValueError("sensitivity must be non-negative")
    return sensitivity_Hz_per_mT2 * delta_B_mT**2


def relative_field_offset(delta_B: float, bias_B: float) -> float:
    """Pinned-field offset relative to the bias field; both in the same unit."""
    if bias_B <= 0:
        raise ValueError("bias field must be positive")
    return abs(delta_B) / bias_B


def coherence_limited_shift(days: float = 1.0) -> float:
    """Frequency shift that accumulates one cycle of phase over ``days``."""
    return 1.0 / (days * SECONDS_PER_DAY)
