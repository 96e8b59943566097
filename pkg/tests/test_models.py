"""Tests for the closed-form architecture models."""
import pytest
from pydantic import ValidationError as PydanticValidationError

from model.dtos import KappaInputs, MachineParams, RentParams, ShorKind, ShorModel
from qvn.models import (
    dac_ram_requirement,
    kappa,
    kappa_range,
    lo_stability_required,
    machine_throughput,
    rent_growth_factor,
    rent_pins,
    shor_crossover,
    shor_qubits,
    shor_time,
    steane_cycle,
    syndrome_sweep,
)


class TestRent:
    """Test cases for Rent's rule."""

    def test_single_element(self):
        """Test that one element needs K pins."""
        assert rent_pins(RentParams(K=3.5, r=0.4, B=1)) == pytest.approx(3.5)

    def test_pins(self):
        """Test K * B**r for a square-root exponent."""
        assert rent_pins(RentParams(K=2, r=0.5, B=100)) == pytest.approx(20.0)

    def test_memory_growth(self):
        """Test pin growth of a memory array scaled by 1024."""
        assert rent_growth_factor(0.12, 1024) == pytest.approx(2.30, abs=0.01)

    def test_multiplicative(self):
        """Test P(B1*B2)*K == P(B1)*P(B2) for fixed r."""
        k, r = 2.0, 0.3
        combined = rent_pins(RentParams(K=k, r=r, B=12 * 30))

        assert combined * k == pytest.approx(rent_pins(RentParams(K=k, r=r, B=12)) * rent_pins(RentParams(K=k, r=r, B=30)))

    def test_invalid_element_count(self):
        """Test that fewer than one element is rejected."""
        with pytest.raises(PydanticValidationError):
            RentParams(K=1, r=0.5, B=0.5)


class TestKappa:
    """Test cases for serialization headroom."""

    def test_superconducting(self):
        """Test 100 us coherence against a 1 us QEC cycle."""
        low, high = kappa_range(100e-6, 10 * 100e-9)

        assert low == pytest.approx(1.0)
        assert high == pytest.approx(10.0)

    def test_trapped_ion(self):
        """Test 100 s coherence against a 1 ms QEC cycle."""
        low, high = kappa_range(100.0, 10 * 100e-6)

        assert low == pytest.approx(1000.0)
        assert high == pytest.approx(10000.0)

    def test_boundary(self):
        """Test that the full coherence over one cycle gives exactly one."""
        assert kappa(KappaInputs(coherence_time_s=1e-3, qec_fraction=1.0, qec_cycle_per_qubit_s=1e-3)) == 1.0

    def test_linear_scaling(self):
        """Test linearity in coherence time and inverse scaling in cycle time."""
        base = kappa(KappaInputs(coherence_time_s=10.0, qec_fraction=0.05, qec_cycle_per_qubit_s=1e-3))

        assert kappa(KappaInputs(coherence_time_s=30.0, qec_fraction=0.05, qec_cycle_per_qubit_s=1e-3)) == pytest.approx(3 * base)
        assert kappa(KappaInputs(coherence_time_s=10.0, qec_fraction=0.05, qec_cycle_per_qubit_s=2e-3)) == pytest.approx(base / 2)

    def test_fraction_above_one(self):
        """Test that the usable fraction cannot exceed the coherence time."""
        with pytest.raises(PydanticValidationError):
            KappaInputs(coherence_time_s=1.0, qec_fraction=1.5, qec_cycle_per_qubit_s=1e-3)


def test_steane_cycle():
    """Test 24 gates and one correction per seven qubits."""
    assert steane_cycle(20e-6, 10e-6) == pytest.approx(70e-6)
    assert steane_cycle(100e-6, 0.0) == pytest.approx(342.857e-6, rel=1e-5)
    assert steane_cycle(7e-6, 0.0) == pytest.approx(24e-6)


class TestShor:
    """Test cases for factoring time models."""

    def test_bcdp_time(self):
        """Test 54 n**3 steps at a 1 MHz logical clock."""
        assert shor_time(ShorModel(kind=ShorKind.BCDP, logical_clock_Hz=1e6), 10) == pytest.approx(0.054)

    def test_qubits(self):
        """Test the qubit counts of the three architectures."""
        assert shor_qubits(ShorModel(kind=ShorKind.BCDP, logical_clock_Hz=1e6), 1) == 8
        assert shor_qubits(ShorModel(kind=ShorKind.BCDP, logical_clock_Hz=1e6), 100) == 503
        assert shor_qubits(ShorModel(kind=ShorKind.NTC, logical_clock_Hz=1e6), 100) == 20000
        assert shor_qubits(ShorModel(kind=ShorKind.AC, logical_clock_Hz=1e3), 100) == 20000

    def test_ordering(self):
        """Test which architecture wins for short and long numbers."""
        bcdp = ShorModel(kind=ShorKind.BCDP, logical_clock_Hz=1e6)
        ntc = ShorModel(kind=ShorKind.NTC, logical_clock_Hz=1e6)
        ac = ShorModel(kind=ShorKind.AC, logical_clock_Hz=1e3)

        assert shor_time(ntc, 50) < shor_time(bcdp, 50) < shor_time(ac, 50)
        assert shor_time(ac, 10_000) < shor_time(ntc, 10_000) < shor_time(bcdp, 10_000)

    def test_crossover(self):
        """Test where the slow-clock concurrent architecture overtakes NTC."""
        ac = ShorModel(kind=ShorKind.AC, logical_clock_Hz=1e3)
        ntc = ShorModel(kind=ShorKind.NTC, logical_clock_Hz=1e6)

        n = shor_crossover(ac, ntc)

        assert n == pytest.approx(5.5e3, rel=0.05)
        assert shor_time(ac, n) == pytest.approx(shor_time(ntc, n), rel=1e-6)

    def test_short_numbers_rejected(self):
        """Test that fewer than two bits are rejected."""
        with pytest.raises(ValueError):
            shor_time(ShorModel(kind=ShorKind.AC, logical_clock_Hz=1e3), 1)


class TestThroughput:
    """Test cases for gate rates and syndrome sweeps."""

    def test_default_rates(self):
        """Test 800 thousand single-qubit and 50 thousand entangling operations per second."""
        rates = machine_throughput(MachineParams())

        assert rates["oneq_per_s"] == 800_000
        assert rates["twoq_per_s"] == 50_000

    def test_variants(self):
        """Test the rates for a single parallel gate and a slow entangling gate."""
        assert machine_throughput(MachineParams(n_parallel_1q=1))["oneq_per_s"] == pytest.approx(100_000)
        assert machine_throughput(MachineParams(t_2q_s=100e-6))["twoq_per_s"] == pytest.approx(10_000)

    def test_full_machine_sweep(self):
        """Test a syndrome sweep over 16384 physical qubits."""
        sweep = syndrome_sweep(16384, 20e-6)

        assert sweep["sweep_time_s"] == pytest.approx(1.1235, rel=0.005)
        assert sweep["detections"] == pytest.approx(14043, abs=1)
        assert sweep["detection_interval_s"] == pytest.approx(80e-6, abs=1e-7)
        assert sweep["detections"] * sweep["detection_interval_s"] == pytest.approx(sweep["sweep_time_s"])

    def test_one_block(self):
        """Test that seven qubits need 24 gates and 6 detections."""
        sweep = syndrome_sweep(7, 20e-6)

        assert sweep["total_2q_gates"] == pytest.approx(24)
        assert sweep["detections"] == pytest.approx(6)
        assert syndrome_sweep(14, 20e-6)["sweep_time_s"] == pytest.approx(0.96e-3)

    def test_ceil_blocks(self):
        """Test rounding up to whole blocks."""
        assert syndrome_sweep(8, 20e-6, ceil_blocks=True)["total_2q_gates"] == 48


def test_lo_stability():
    """Test the fractional stability for a day of coherence."""
    assert lo_stability_required(10e9, 86400) == pytest.approx(1.16e-15, rel=0.01)
    assert lo_stability_required(1.0, 1.0) == 1.0
    assert lo_stability_required(5.0e9, 86400) == pytest.approx(2.3e-15, rel=0.02)


class TestDacRam:
    """Test cases for waveform memory."""

    def test_single_waveform(self):
        """Test a 1 ms ramp sampled every microsecond."""
        assert dac_ram_requirement(1e-3, 1e-6, 16, 1) == 2000

    def test_many_waveforms(self):
        """Test eight waveforms at the fastest common rate."""
        assert dac_ram_requirement(1e-3, 100e-9, 16, 8) == 160_000

    def test_empty_ramp(self):
        """Test that a zero-length ramp needs no memory."""
        assert dac_ram_requirement(0.0, 1e-6, 16, 1) == 0

    def test_too_fast(self):
        """Test that the DAC rate bound is enforced."""
        with pytest.raises(ValueError):
            dac_ram_requirement(1e-3, 1e-9, 16, 1)
