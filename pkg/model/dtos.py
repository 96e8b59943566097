from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, field_validator, model_validator

from logic.logging_config import configured_logger as logger


class StageKind(str, Enum):
    COMBINE = "Combine"
    DOPPLER_COOL = "DopplerCool"
    EIT_COOL = "EITCool"
    DECODE = "Decode"
    MAP_TO_PROCESSING = "MapToProcessing"
    QIP = "QIP"
    MAP_BACK = "MapBack"
    ENCODE = "Encode"
    SPLIT = "Split"


class PipelineVariant(str, Enum):
    COMBINED_STRING = "CombinedString"
    SEPARATE_COOLING = "SeparateCooling"


STAGE_ORDER: dict[PipelineVariant, list[StageKind]] = {
    PipelineVariant.COMBINED_STRING: [
        StageKind.COMBINE,
        StageKind.DOPPLER_COOL,
        StageKind.EIT_COOL,
        StageKind.DECODE,
        StageKind.MAP_TO_PROCESSING,
        StageKind.QIP,
        StageKind.MAP_BACK,
        StageKind.ENCODE,
        StageKind.SPLIT,
    ],
    # strings are cooled on their own and only joined for processing
    PipelineVariant.SEPARATE_COOLING: [
        StageKind.DOPPLER_COOL,
        StageKind.EIT_COOL,
        StageKind.DECODE,
        StageKind.MAP_TO_PROCESSING,
        StageKind.COMBINE,
        StageKind.QIP,
        StageKind.MAP_BACK,
        StageKind.ENCODE,
        StageKind.SPLIT,
    ],
}


class PipelineStageSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: StageKind
    duration_s: PositiveFloat
    multiplicity: PositiveInt = 1


class PipelineConfig(BaseModel):
    """Ordered QALU stages; a stage with multiplicity m is m sub-stages sharing its duration."""

    model_config = ConfigDict(extra="forbid")

    variant: PipelineVariant = PipelineVariant.COMBINED_STRING
    stages: list[PipelineStageSpec] = Field(min_length=1)

    @model_validator(mode="after")
    def check_stage_order(self) -> "PipelineConfig":
        order = STAGE_ORDER[self.variant]
        ranks = [order.index(stage.kind) for stage in self.stages]
        if any(later < earlier for earlier, later in zip(ranks, ranks[1:])):
            kinds = [stage.kind.value for stage in self.stages]
            raise ValueError(f"stage order {kinds} does not follow the {self.variant.value} sequence")
        return self


class MachineParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t_1q_s: PositiveFloat = 1.0e-5
    t_2q_s: PositiveFloat = 2.0e-5
    n_parallel_1q: PositiveInt = 8
    shuttle_step_s: PositiveFloat = 5.0e-6
    mux_switch_s: PositiveFloat = 1.0e-6
    detection_time_s: PositiveFloat = 1.0e-4
    n_ghz_ancillas: PositiveInt = 7
    heating_rate_quanta_per_s: PositiveFloat = 0.33
    memory_heating_rate_quanta_per_s: PositiveFloat = 10.0
    pressure_mbar: PositiveFloat = 1.0e-16
    coherence_time_s: PositiveFloat = 100.0
    qec_coherence_fraction: float = Field(default=0.01, gt=0, le=1)
    qubits_per_string: PositiveInt = 4
    ions_per_qubit: PositiveInt = 2
    cooling_ions_per_string: PositiveInt = 2
    lookahead: PositiveInt = 1
    pipeline: Optional[PipelineConfig] = None

    @property
    def ions_per_string(self) -> int:
        return self.qubits_per_string * self.ions_per_qubit


class DetectionBudget(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scatter_rate_Hz: PositiveFloat = 1.0e7
    detection_time_s: PositiveFloat = 1.0e-5
    collection_efficiency: float = Field(default=0.1, gt=0, le=1)
    detector_efficiency: float = Field(default=0.5, gt=0, le=1)
    clicks_required: PositiveFloat = 5
    d_state_lifetime_s: PositiveFloat = 1.0
    n_ghz_ancillas: PositiveInt = 1


class RentParams(BaseModel):
    K: PositiveFloat
    r: float = Field(ge=0)
    B: float = Field(ge=1)

    @field_validator("r")
    @classmethod
    def warn_on_steep_exponent(cls, value: float) -> float:
        if value > 0.75:
            logger.warning(f"Rent exponent {value} is above the 0.75 observed for logic")
        return value


class KappaInputs(BaseModel):
    coherence_time_s: PositiveFloat
    qec_fraction: float = Field(gt=0, le=1)
    qec_cycle_per_qubit_s: PositiveFloat


class ShorKind(str, Enum):
    BCDP = "BCDP"
    NTC = "NTC"
    AC = "AC"


class ShorModel(BaseModel):
    kind: ShorKind
    logical_clock_Hz: PositiveFloat


class RunConfig(BaseModel):
    layout: str = "preset:quantum4004"
    circuit: Optional[Path] = None
    params: Optional[Path] = None
    out_dir: Path = Path("qvn_out")
    formats: list[str] = ["jsonl"]
    seed: int = 0
    seeds: Optional[list[int]] = None
    jobs: PositiveInt = 1

    @field_validator("formats")
    @classmethod
    def check_formats(cls, value: list[str]) -> list[str]:
        unknown = [fmt for fmt in value if fmt not in {"jsonl", "csv", "svg_timeline"}]
        if unknown:
            raise ValueError(f"unsupported trace formats {unknown}")
        return value


class ZoneResources(BaseModel):
    id: str
    kind: str
    segments: int
    dacs: int
    size_ul: Optional[tuple[int, int]]
    size_mm: Optional[tuple[float, float]]
    cells: int = 0
    capacity_qubit_ions: int = 0


class ResourceReport(BaseModel):
    unit_length_m: float
    zones: list[ZoneResources]
    total_segments: int
    total_dacs: int
    size_ul: tuple[int, int]
    size_mm: tuple[float, float]
    diagonal_mm: float
    capacity_qubit_ions: int
    segments_per_qubit_ion: Optional[float]
    qubit_ions_per_dac: Optional[float]


class PipelineMetrics(BaseModel):
    cycle_time_s: float
    latency_s: float
    depth: int
    throughput_per_s: float
    speedup: float


class DetectionReport(BaseModel):
    photons_emitted: float
    expected_clicks: float
    shelving_infidelity: float
    min_collection_for_clicks: float
    min_NA: float
    decays_to_flip: int
    majority_vote_error_leading: float
    majority_vote_error_exact: float


class SimMetrics(BaseModel):
    makespan_s: float
    counts: dict[str, int]
    single_qubit_ops_per_s: float
    entangling_gates_per_s: float
    ideal_single_qubit_ops_per_s: float
    ideal_entangling_gates_per_s: float
    dac_switch_count: int
    utilization: dict[str, float]
    peak_dac_pairs: dict[str, int]
    idle_phonons: dict[str, float]

    @field_validator("utilization")
    @classmethod
    def check_utilization(cls, value: dict[str, float]) -> dict[str, float]:
        outside = {zone: u for zone, u in value.items() if not 0.0 <= u <= 1.0}
        if outside:
            raise ValueError(f"utilization outside [0, 1]: {outside}")
        return value

    def to_document(self) -> dict:
        return {
            "makespan_s": self.makespan_s,
            "counts": self.counts,
            "rates": {
                "single_qubit_ops_per_s": self.single_qubit_ops_per_s,
                "entangling_gates_per_s": self.entangling_gates_per_s,
                "ideal_single_qubit_ops_per_s": self.ideal_single_qubit_ops_per_s,
                "ideal_entangling_gates_per_s": self.ideal_entangling_gates_per_s,
            },
            "dac_switch_count": self.dac_switch_count,
            "utilization": self.utilization,
            "peak_dac_pairs": self.peak_dac_pairs,
            "idle_phonons": self.idle_phonons,
        }
