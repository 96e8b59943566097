"""QALU pipeline timing."""
from dataclasses import dataclass

from model.dtos import (
    STAGE_ORDER,
    MachineParams,
    PipelineConfig,
    PipelineMetrics,
    PipelineStageSpec,
    PipelineVariant,
    StageKind,
)
from qvn.utils.units import ceil_ratio, per_second, to_ns, to_s

DOPPLER_DEFAULT_S = 1.0e-3
STAGE_DEFAULTS_S = {
    StageKind.COMBINE: 50e-6,
    StageKind.EIT_COOL: 200e-6,
    StageKind.DECODE: 80e-6,
    StageKind.MAP_TO_PROCESSING: 10e-6,
    StageKind.MAP_BACK: 10e-6,
    StageKind.ENCODE: 80e-6,
    StageKind.SPLIT: 50e-6,
}


@dataclass(frozen=True)
class Stage:
    """One physical processing region after multiplicity expansion."""

    index: int
    kind: StageKind
    duration_s: float


def expand_stages(config: PipelineConfig) -> list[Stage]:
    """Split every stage of multiplicity m into m sub-stages; the last one takes the nanosecond remainder."""
    stages = []
    for spec in config.stages:
        total_ns = to_ns(spec.duration_s)
        share_ns = total_ns // spec.multiplicity
        for k in range(spec.multiplicity):
            last = k == spec.multiplicity - 1
            dur_ns = total_ns - share_ns * (spec.multiplicity - 1) if last else share_ns
            stages.append(Stage(len(stages), spec.kind, to_s(dur_ns)))
    return stages


def pipeline_metrics(config: PipelineConfig) -> PipelineMetrics:
    """
    Beat, latency and depth of a pipeline.

    The cycle time is the longest sub-stage, the latency the sum of all of them; once
    filled, one string leaves the pipeline per cycle.
    """
    stages = expand_stages(config)
    cycle_ns = max(to_ns(stage.duration_s) for stage in stages)
    latency_ns = sum(to_ns(stage.duration_s) for stage in stages)
    return PipelineMetrics(
        cycle_time_s=to_s(cycle_ns),
        latency_s=to_s(latency_ns),
        depth=len(stages),
        throughput_per_s=per_second(1, to_s(cycle_ns)),
        speedup=latency_ns / cycle_ns,
    )


def doppler_stage_count(t_doppler_s: float, beat_s: float) -> int:
    """Doppler sub-stages needed so that none exceeds the beat."""
    if t_doppler_s <= 0 or beat_s <= 0:
        raise ValueError("Doppler time and beat must be positive")
    return max(1, ceil_ratio(t_doppler_s, beat_s))


def default_pipeline(
    params: MachineParams | None = None,
    variant: PipelineVariant = PipelineVariant.COMBINED_STRING,
    t_doppler_s: float = DOPPLER_DEFAULT_S,
) -> PipelineConfig:
    """
    Default QALU stages, Doppler cooling split into beat-sized sub-stages.

    The QIP stage lasts one two-qubit gate; the beat is set by the slowest non-Doppler stage.
    """
    params = params or MachineParams()
    durations = dict(STAGE_DEFAULTS_S)
    durations[StageKind.QIP] = params.t_2q_s
    beat = max(durations.values())
    multiplicity = doppler_stage_count(t_doppler_s, beat)

    stages = []
    for kind in STAGE_ORDER[variant]:
        if kind == StageKind.DOPPLER_COOL:
            stages.append(PipelineStageSpec(kind=kind, duration_s=t_doppler_s, multiplicity=multiplicity))
        else:
            stages.append(PipelineStageSpec(kind=kind, duration_s=durations[kind]))
    return PipelineConfig(variant=variant, stages=stages)


def resolve_pipeline(params: MachineParams) -> PipelineConfig:
    return params.pipeline if params.pipeline is not None else default_pipeline(params)
