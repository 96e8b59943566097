"""Tests for the species database and triple selection."""
from fractions import Fraction

import pytest

from qvn.species import (
    SurfaceMaterial,
    TripleOptions,
    allowed_species,
    be_exclusion_check,
    bundled_species,
    enumerate_triples,
    mass_ratio,
    parse_species,
)
from qvn.utils.exceptions import EmptyResult, ParseError


def names(triples):
    return [triple.names() for triple in triples]


def test_bundled_database():
    """Test the bundled records and their parsed fields."""
    db = bundled_species()

    assert len(db) == 14
    assert db["43Ca+"].nuclear_spin_I == Fraction(7, 2)
    assert db["138Ba+"].has_d_state and not db["138Ba+"].has_spin
    assert not db["9Be+"].has_d_state
    assert [r.name for r in db.isotopes_of("Yb")] == ["171Yb+", "172Yb+"]


def test_parse_errors():
    """Test that malformed species documents are parse errors."""
    with pytest.raises(ParseError):
        parse_species({"ions": []})
    with pytest.raises(ParseError):
        parse_species({"species": [{"ion": "1H+", "element": "H"}]})


def test_cutoff_wavelengths():
    """Test photoelectric cutoffs from the work functions."""
    assert SurfaceMaterial.ALUMINUM.cutoff_wavelength_nm == pytest.approx(303.9, abs=0.1)
    assert SurfaceMaterial.GOLD.cutoff_wavelength_nm == pytest.approx(233.9, abs=0.1)


class TestAllowedSpecies:
    """Test cases for the surface wavelength filter."""

    def test_aluminum(self):
        """Test that aluminum rules out every deep-UV species."""
        allowed = {r.element for r in allowed_species(material="aluminum")}

        assert allowed == {"Be", "Ca", "Sr", "Ba", "Yb"}

    def test_gold(self):
        """Test that gold admits magnesium as well."""
        allowed = {r.element for r in allowed_species(material=SurfaceMaterial.GOLD)}

        assert allowed == {"Be", "Mg", "Ca", "Sr", "Ba", "Yb"}

    def test_zero_cutoff(self):
        """Test that a zero cutoff keeps every species."""
        assert len(allowed_species(cutoff_nm=0.0)) == len(bundled_species())


class TestTriples:
    """Test cases for (qubit, detection, cooling) enumeration."""

    def test_aluminum_ratio_three(self):
        """Test the three triples on aluminum at a mass ratio of three."""
        triples = enumerate_triples("aluminum", 3.0)

        assert names(triples) == [
            ("87Sr+", "138Ba+", "40Ca+"),
            ("87Sr+", "138Ba+", "172Yb+"),
            ("171Yb+", "138Ba+", "88Sr+"),
        ]

    def test_aluminum_looser_ratio(self):
        """Test that calcium qualifies as a qubit at a ratio of 3.5."""
        triples = enumerate_triples("aluminum", 3.5)

        assert names(triples)[0] == ("43Ca+", "138Ba+", "88Sr+")
        assert len(triples) == 4

    def test_gold_ratio_three(self):
        """Test that gold adds magnesium-based triples after the barium ones."""
        triples = names(enumerate_triples("gold", 3.0))

        assert triples[:3] == names(enumerate_triples("aluminum", 3.0))
        assert triples[3:] == [("25Mg+", "40Ca+", "9Be+"), ("43Ca+", "88Sr+", "24Mg+")]

    def test_ratios_hold(self):
        """Test that every co-trapped partner is within the ratio."""
        for triple in enumerate_triples("gold", 3.5, TripleOptions(best_detection_only=False)):
            assert mass_ratio(triple.qubit, triple.detection) <= 3.5
            assert mass_ratio(triple.qubit, triple.cooling) <= 3.5
            assert len({triple.qubit.element, triple.detection.element, triple.cooling.element}) == 3
            assert triple.qubit.has_spin
            assert not triple.detection.has_spin and triple.detection.has_d_state

    def test_looser_ratio_is_superset(self):
        """Test that raising the ratio only adds triples when all detections are kept."""
        options = TripleOptions(best_detection_only=False)

        tight = set(names(enumerate_triples("aluminum", 3.0, options)))
        loose = set(names(enumerate_triples("aluminum", 3.5, options)))

        assert tight <= loose

    @pytest.mark.parametrize("material", ["aluminum", "gold"])
    def test_looser_ratio_is_superset_by_default(self, material):
        """Test that the default filters never drop a triple when the ratio grows."""
        tight = set(names(enumerate_triples(material, 3.0)))
        loose = set(names(enumerate_triples(material, 3.5)))

        assert tight <= loose
        if material == "gold":
            assert ("43Ca+", "88Sr+", "24Mg+") in loose

    def test_barium_as_qubit_without_reservation(self):
        """Test that barium becomes a qubit once it is not reserved for detection."""
        triples = names(enumerate_triples("aluminum", 3.0, TripleOptions(reserve_prime_detection=False)))

        assert ("137Ba+", "88Sr+", "172Yb+") in triples

    def test_to_dict(self):
        """Test the report row of a triple."""
        row = enumerate_triples("aluminum", 3.0)[0].to_dict()

        assert row["qubit"] == "87Sr+"
        assert row["tau_5/2_s"] == 30
        assert row["qubit_cooling_ratio"] == pytest.approx(87 / 40, abs=1e-4)

    def test_ratio_below_one(self):
        """Test that a mass ratio below one is rejected."""
        with pytest.raises(ValueError):
            enumerate_triples("aluminum", 0.5)

    def test_no_triple(self):
        """Test that a ratio of one admits nothing."""
        with pytest.raises(EmptyResult):
            enumerate_triples("aluminum", 1.0)


class TestBerylliumExclusion:
    """Test cases for the beryllium check."""

    def test_aluminum(self):
        """Test that beryllium is never used on aluminum at a ratio of three."""
        assert be_exclusion_check("aluminum", 3.0) is True

    def test_gold(self):
        """Test that beryllium cools magnesium on gold."""
        assert be_exclusion_check("gold", 3.0) is False

    def test_large_ratio(self):
        """Test that beryllium returns on aluminum at a ratio of five."""
        assert be_exclusion_check("aluminum", 5.0) is False

    def test_empty_counts_as_excluded(self):
        """Test that no triples at all means no beryllium."""
        assert be_exclusion_check("aluminum", 1.0) is True
