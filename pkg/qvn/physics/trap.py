"""Segment and shunt capacitance of the trap electrodes."""
from __future__ import annotations

from pydantic import BaseModel, Field
from scipy.constants import epsilon_0

EPS_R_SIO2 = 3.8
SIO2_BREAKDOWN_V_PER_M = 30e6
DRIVE_AMPLITUDE_V = 10.0


class CapacitanceModel(BaseModel):
    """Capacitances of one segment, in farads."""

    C_shunt: float = Field(ge=0)
    C_shunt_prime: float = Field(ge=0)
    C_seg: float = Field(ge=0)
    C_seg_prime: float = Field(ge=0)
    eps_r: float = Field(default=EPS_R_SIO2, gt=0)

    @classmethod
    def old_geometry(cls, c_shunt: float, c_seg: float, eps_r: float = EPS_R_SIO2) -> "CapacitanceModel":
        """Dielectric-filled gaps: both primed terms scale with the permittivity."""
        return cls(C_shunt=c_shunt, C_shunt_prime=eps_r * c_shunt, C_seg=c_seg, C_seg_prime=eps_r * c_seg, eps_r=eps_r)

    @classmethod
    def new_geometry(
        cls, c_seg: float, plate_capacitance_F: float, c_shunt: float = 0.0, eps_r: float = EPS_R_SIO2
    ) -> "CapacitanceModel":
        """Buried shunt plate: no dielectric between segments, plate sets the primed shunt."""
        return cls(C_shunt=c_shunt, C_shunt_prime=plate_capacitance_F, C_seg=c_seg, C_seg_prime=0.0, eps_r=eps_r)


def plate_capacitance(area_m2: float, thickness_m: float, eps_r: float = EPS_R_SIO2) -> float:
    if area_m2 <= 0 or thickness_m <= 0 or eps_r <= 0:
        raise ValueError("plate dimensions and permittivity must be positive")
    return epsilon_0 * eps_r * area_m2 / thickness_m


def shunt_ratio(model: CapacitanceModel) -> float:
    """Cross-talk ratio (C_seg + C_seg') / (C_shunt + C_shunt')."""
    shunt = model.C_shunt + model.C_shunt_prime
    if shunt == 0:
        raise ValueError("total shunt capacitance is zero")
    return (model.C_seg + model.C_seg_prime) / shunt


def dielectric_min_thickness(
    voltage_V: float = DRIVE_AMPLITUDE_V, breakdown_V_per_m: float = SIO2_BREAKDOWN_V_PER_M
) -> float:
    """Thinnest insulator that withstands the peak voltage swing between plate and segment."""
    if voltage_V < 0 or breakdown_V_per_m <= 0:
        raise ValueError("voltage must be non-negative and breakdown strength positive")
    # segments swing ±V around a grounded plate
    return 2 * voltage_V / breakdown_V_per_m
