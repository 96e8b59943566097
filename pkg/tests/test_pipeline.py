"""Tests for QALU pipeline timing and the detection pipeline."""
import pytest
from pydantic import ValidationError as PydanticValidationError

from model.dtos import DetectionBudget, MachineParams, PipelineConfig, PipelineStageSpec, PipelineVariant, StageKind
from qvn.pipeline import (
    default_pipeline,
    detection_budget,
    detection_zone_beat,
    doppler_stage_count,
    expand_stages,
    ghz_generation_time,
    initialization_time,
    pipeline_metrics,
    required_detection_zones,
    resolve_pipeline,
)
from qvn.utils.exceptions import InfeasibleCollection


def make_pipeline(*stages):
    return PipelineConfig(
        stages=[PipelineStageSpec(kind=kind, duration_s=duration, multiplicity=m) for kind, duration, m in stages]
    )


def test_default_pipeline_metrics():
    """Test depth, latency and beat of the default QALU pipeline."""
    metrics = pipeline_metrics(default_pipeline())

    assert metrics.depth == 13
    assert metrics.latency_s == pytest.approx(1500e-6)
    assert metrics.cycle_time_s == pytest.approx(200e-6)
    assert metrics.throughput_per_s == pytest.approx(5000.0)
    assert metrics.speedup == pytest.approx(7.5)


def test_max_and_sum_of_stages():
    """Test that the cycle is the slowest stage and the latency their sum."""
    config = make_pipeline(
        (StageKind.COMBINE, 100e-6, 1), (StageKind.QIP, 1000e-6, 1), (StageKind.SPLIT, 50e-6, 1)
    )

    metrics = pipeline_metrics(config)

    assert metrics.cycle_time_s == pytest.approx(1000e-6)
    assert metrics.latency_s == pytest.approx(1150e-6)
    assert metrics.depth == 3


def test_multiplicity_splits_a_stage():
    """Test that a stage of multiplicity m becomes m equal sub-stages."""
    config = make_pipeline((StageKind.DOPPLER_COOL, 1e-3, 5), (StageKind.QIP, 20e-6, 1))

    stages = expand_stages(config)

    assert [stage.kind for stage in stages] == [StageKind.DOPPLER_COOL] * 5 + [StageKind.QIP]
    assert [stage.index for stage in stages] == list(range(6))
    assert stages[0].duration_s == pytest.approx(200e-6)
    assert pipeline_metrics(config).cycle_time_s == pytest.approx(200e-6)


def test_uneven_split_keeps_the_total():
    """Test that the last sub-stage absorbs the nanosecond remainder."""
    config = make_pipeline((StageKind.DOPPLER_COOL, 1e-3, 3))

    stages = expand_stages(config)

    assert [round(stage.duration_s * 1e9) for stage in stages] == [333_333, 333_333, 333_334]
    assert pipeline_metrics(config).latency_s == 1e-3
    assert pipeline_metrics(config).cycle_time_s == pytest.approx(333_334e-9)


def test_stage_order_is_enforced():
    """Test that stages must follow the variant's sequence."""
    with pytest.raises(PydanticValidationError):
        make_pipeline((StageKind.QIP, 20e-6, 1), (StageKind.COMBINE, 50e-6, 1))


def test_separate_cooling_variant():
    """Test that the separate-cooling variant combines strings after cooling."""
    config = default_pipeline(variant=PipelineVariant.SEPARATE_COOLING)
    kinds = [spec.kind for spec in config.stages]

    assert kinds.index(StageKind.COMBINE) > kinds.index(StageKind.EIT_COOL)
    assert pipeline_metrics(config).latency_s == pytest.approx(1500e-6)


def test_doppler_stage_count():
    """Test the number of Doppler sub-stages per beat."""
    assert doppler_stage_count(1e-3, 200e-6) == 5
    assert doppler_stage_count(1e-3, 300e-6) == 4
    assert doppler_stage_count(100e-6, 200e-6) == 1
    assert doppler_stage_count(1e-3, 100e-6) == 10
    assert doppler_stage_count(250e-6, 100e-6) == 3
    with pytest.raises(ValueError):
        doppler_stage_count(0, 200e-6)


def test_resolve_pipeline_prefers_params():
    """Test that a configured pipeline overrides the default one."""
    config = make_pipeline((StageKind.QIP, 50e-6, 1))

    assert resolve_pipeline(MachineParams(pipeline=config)) is config
    assert pipeline_metrics(resolve_pipeline(MachineParams())).depth == 13


def test_slow_gate_sets_the_beat():
    """Test that a two-qubit gate slower than every stage becomes the beat."""
    config = default_pipeline(MachineParams(t_2q_s=500e-6))

    assert pipeline_metrics(config).cycle_time_s == pytest.approx(500e-6)
    assert pipeline_metrics(config).depth == 10


class TestDetectionPipeline:
    """Test cases for GHZ timing and detection-zone count."""

    def test_ghz_time(self):
        """Test swap plus fan-out for seven ancillas."""
        assert ghz_generation_time(7, 20e-6) == 180e-6
        assert ghz_generation_time(1, 20e-6) == pytest.approx(60e-6)
        assert ghz_generation_time(5, 20e-6) == pytest.approx(140e-6)

    def test_ghz_needs_an_ancilla(self):
        """Test that zero ancillas are rejected."""
        with pytest.raises(ValueError):
            ghz_generation_time(0, 20e-6)

    def test_initialization_time(self):
        """Test that initialization is one swap."""
        assert initialization_time(20e-6) == pytest.approx(60e-6)

    def test_required_zones(self):
        """Test three zones for a 180 us GHZ against an 80 us detection interval."""
        assert required_detection_zones(180e-6, 80e-6) == 3
        assert required_detection_zones(80e-6, 80e-6) == 1
        with pytest.raises(ValueError):
            required_detection_zones(180e-6, 0)

    def test_zone_beat(self):
        """Test that the slower sub-zone sets a detection zone's beat."""
        assert detection_zone_beat(MachineParams()) == pytest.approx(180e-6)
        assert detection_zone_beat(MachineParams(detection_time_s=1e-3)) == pytest.approx(1e-3)


class TestDetectionBudget:
    """Test cases for the photon and majority-vote budget."""

    def test_calcium_defaults(self):
        """Test a single calcium ion scattering at 10 MHz for 10 us."""
        report = detection_budget(DetectionBudget())

        assert report.photons_emitted == pytest.approx(100.0)
        assert report.expected_clicks == pytest.approx(5.0)
        assert report.min_collection_for_clicks == pytest.approx(0.10, abs=0.005)
        assert report.min_NA == pytest.approx(0.60, abs=0.01)
        assert report.shelving_infidelity == pytest.approx(1e-5, rel=0.05)

    def test_majority_vote(self):
        """Test five ancillas at 100 us: leading order and exact tail."""
        report = detection_budget(DetectionBudget(detection_time_s=1e-4, n_ghz_ancillas=5))

        assert report.decays_to_flip == 3
        assert report.shelving_infidelity == pytest.approx(1e-4, rel=1e-3)
        assert report.majority_vote_error_leading == pytest.approx(1e-12, rel=1e-3)
        assert report.majority_vote_error_exact == pytest.approx(1e-11, rel=1e-2)

    def test_infeasible_collection(self):
        """Test that too few photons cannot be collected efficiently enough."""
        with pytest.raises(InfeasibleCollection) as excinfo:
            detection_budget(DetectionBudget(scatter_rate_Hz=1e5))

        assert excinfo.value.required == pytest.approx(10.0)
        assert excinfo.value.limit == 0.5

    def test_na_grows_over_the_whole_collection_range(self):
        """Test that the aperture rises with the needed collection up to NA 1 at one half."""
        clicks = [2.5 * k for k in range(1, 11)]

        apertures = [detection_budget(DetectionBudget(clicks_required=c)).min_NA for c in clicks]

        assert all(b > a for a, b in zip(apertures, apertures[1:]))
        assert apertures[-1] == pytest.approx(1.0)
        assert detection_budget(DetectionBudget(clicks_required=12.5)).min_collection_for_clicks == pytest.approx(0.25)
        with pytest.raises(InfeasibleCollection) as excinfo:
            detection_budget(DetectionBudget(clicks_required=26))
        assert excinfo.value.required == pytest.approx(0.52)

    def test_monotonicity(self):
        """Test that clicks grow with ancillas, time and collection while NA shrinks."""
        base = detection_budget(DetectionBudget())

        more_ions = detection_budget(DetectionBudget(n_ghz_ancillas=3))
        longer = detection_budget(DetectionBudget(detection_time_s=2e-5))
        wider = detection_budget(DetectionBudget(collection_efficiency=0.2))

        assert more_ions.expected_clicks > base.expected_clicks
        assert longer.expected_clicks > base.expected_clicks
        assert wider.expected_clicks > base.expected_clicks
        assert more_ions.min_NA < base.min_NA
