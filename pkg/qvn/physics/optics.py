"""Laser power needed for a fixed intensity at a new beam waist."""
from __future__ import annotations


def beam_power_scaling(p_ref_W: float, w0_ref_m: float, w0_new_m: float) -> float:
    if p_ref_W <= 0 or w0_ref_m <= 0 or w0_new_m <= 0:
        raise ValueError("power and beam waists must be positive")
    return p_ref_W * (w0_new_m / w0_ref_m) ** 2
