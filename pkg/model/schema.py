"""File schemas: layout, circuit and species database documents."""
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

ZoneKindName = Literal["memory", "qalu", "detection", "storage", "connecting"]
TrackEnd = Literal["head", "tail"]


class ZoneRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    kind: ZoneKindName
    size_ul: Optional[tuple[int, int]] = None
    segments: int = Field(ge=0)
    dacs: int = Field(ge=0)
    grid: Optional[tuple[int, int]] = None
    cell_capacity: Optional[int] = Field(default=None, ge=0)


class TrackRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int
    zone: str
    pairs: int = Field(ge=1)
    bank: Optional[str] = None
    static_set: Optional[str] = None
    dedicated: bool = False
    storage_allowed: bool = False
    cooling_beam_axis: bool = False


class JunctionRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: int
    kind: Literal["X", "Y"]
    arms: list[int]
    ends: Optional[list[TrackEnd]] = None
    extra_pair_budget: int = Field(default=2, ge=0)


class DacBankRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    pairs: int = Field(default=4, gt=0)


class StaticSetRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    zone: str
    pairs: int = Field(default=3, gt=0)


class LayoutDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    unit_length_m: float = Field(default=8.0e-5, gt=0)
    size_ul: Optional[tuple[int, int]] = None
    zones: list[ZoneRecord]
    tracks: list[TrackRecord] = []
    junctions: list[JunctionRecord] = []
    dac_banks: list[DacBankRecord] = []
    static_sets: list[StaticSetRecord] = []


class OpRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    op: str
    q: list[int]


class CellRefRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    zone: str
    cell: tuple[int, int]
    slot: int = Field(default=0, ge=0)


class CircuitDocument(BaseModel):
    """Circuit file: either a bare op list or ``{"ops": [...], "qubit_map": {...}}``."""

    model_config = ConfigDict(extra="forbid")

    ops: list[OpRecord]
    qubit_map: Optional[dict[int, CellRefRecord]] = None


class SpeciesRow(BaseModel):
    """One row of the species database, keyed by the table column names."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    ion: str
    element: str
    mass_amu: float = Field(gt=0)
    spin: str = Field(alias="I")
    omega0_GHz: float = Field(default=0.0, ge=0)
    lambda_half_nm: float = Field(alias="lambda_1/2_nm", gt=0)
    gamma_half_MHz: float = Field(alias="Gamma_1/2_MHz", gt=0)
    lambda_threehalf_nm: float = Field(alias="lambda_3/2_nm", gt=0)
    lambda_fivehalf_nm: float = Field(default=0.0, alias="lambda_5/2_nm", ge=0)
    tau_fivehalf_s: float = Field(default=0.0, alias="tau_5/2_s", ge=0)
