"""Background-gas collision budget and cryogenic sublimation pressures."""
from __future__ import annotations

import math
from enum import Enum

from qvn.utils.exceptions import OutOfRange

REFERENCE_PRESSURE_MBAR = 1e-11
COLLISIONS_PER_ION_PER_S = 1 / 3600


class Gas(str, Enum):
    H2 = "H2"
    HE4 = "He4"
    HE3 = "He3"


# (T_K, P_mbar) anchors, warm end first
SUBLIMATION_ANCHORS: dict[Gas, tuple[tuple[float, float], tuple[float, float]]] = {
    Gas.H2: ((4.2, 1e-6), (2.6, 1e-12)),
    Gas.HE4: ((0.46, 1e-6), (0.24, 1e-12)),
    Gas.HE3: ((0.22, 1e-6), (0.1, 1e-12)),
}


def collision_rate(n_ions: int, pressure_mbar: float) -> float:
    """Expected background-gas collisions per second across ``n_ions`` ions."""
    if n_ions < 0 or pressure_mbar <= 0:
        raise ValueError("ion count must be non-negative and pressure positive")
    return n_ions * COLLISIONS_PER_ION_PER_S * (pressure_mbar / REFERENCE_PRESSURE_MBAR)


def mean_time_between_collisions(n_ions: int, pressure_mbar: float) -> float:
    rate = collision_rate(n_ions, pressure_mbar)
    return math.inf if rate == 0 else 1 / rate


def sublimation_pressure(gas: Gas | str, temperature_K: float) -> float:
    """
    Equilibrium vapour pressure over the solid, in mbar.

    log10(P) is interpolated linearly in 1/T between the two tabulated anchors.

    Raises:
        OutOfRange: temperature outside the tabulated interval
    """
    (t_hi, p_hi), (t_lo, p_lo) = SUBLIMATION_ANCHORS[Gas(gas)]
    if not t_lo <= temperature_K <= t_hi:
        raise OutOfRange("temperature_K", temperature_K, t_lo, t_hi)
    x_hi, x_lo = 1 / t_hi, 1 / t_lo
    frac = (1 / temperature_K - x_hi) / (x_lo - x_hi)
    return 10 ** (math.log10(p_hi) + frac * (math.log10(p_lo) - math.log10(p_hi)))
