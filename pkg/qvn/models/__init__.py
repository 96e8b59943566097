from qvn.models.architecture import (
    dac_ram_requirement,
    kappa,
    kappa_range,
    lo_stability_required,
    machine_throughput,
    rent_growth_factor,
    rent_pins,
    shor_crossover,
    shor_qubits,
    shor_steps,
    shor_time,
    steane_cycle,
    syndrome_sweep,
)

__all__ = [
    "dac_ram_requirement",
    "kappa",
    "kappa_range",
    "lo_stability_required",
    "machine_throughput",
    "rent_growth_factor",
    "rent_pins",
    "shor_crossover",
    "shor_qubits",
    "shor_steps",
    "shor_time",
    "steane_cycle",
    "syndrome_sweep",
]
