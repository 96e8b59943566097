from qvn.physics.coils import (
    CoilKind,
    CoilSystem,
    CurrentLoop,
    field_at,
    field_at_points,
    fibonacci_sphere,
    homogeneous_sphere_radius,
    max_deviation,
    required_coil_radius,
    shield_size_range,
    single_loop,
)
from qvn.physics.optics import beam_power_scaling
from qvn.physics.trap import CapacitanceModel, dielectric_min_thickness, plate_capacitance, shunt_ratio
from qvn.physics.vacuum import Gas, collision_rate, mean_time_between_collisions, sublimation_pressure
from qvn.physics.zeeman import clock_shift, coherence_limited_shift, relative_field_offset

__all__ = [
    "CapacitanceModel",
    "CoilKind",
    "CoilSystem",
    "CurrentLoop",
    "Gas",
    "beam_power_scaling",
    "clock_shift",
    "coherence_limited_shift",
    "collision_rate",
    "dielectric_min_thickness",
    "fibonacci_sphere",
    "field_at",
    "field_at_points",
    "homogeneous_sphere_radius",
    "max_deviation",
    "mean_time_between_collisions",
    "plate_capacitance",
    "relative_field_offset",
    "required_coil_radius",
    "shield_size_range",
    "shunt_ratio",
    "single_loop",
]
