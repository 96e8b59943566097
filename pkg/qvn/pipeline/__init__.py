from qvn.pipeline.detection import (
    detection_budget,
    detection_zone_beat,
    ghz_generation_time,
    initialization_time,
    required_detection_zones,
)
from qvn.pipeline.stages import (
    Stage,
    default_pipeline,
    doppler_stage_count,
    expand_stages,
    pipeline_metrics,
    resolve_pipeline,
)

__all__ = [
    "Stage",
    "default_pipeline",
    "detection_budget",
    "detection_zone_beat",
    "doppler_stage_count",
    "expand_stages",
    "ghz_generation_time",
    "initialization_time",
    "pipeline_metrics",
    "required_detection_zones",
    "resolve_pipeline",
]
