"""Choosing qubit, detection and cooling species for a given trap surface."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from logic.logging_config import configured_logger as logger
from qvn.species.database import SpeciesDatabase, SpeciesRecord, SurfaceMaterial, bundled_species
from qvn.utils.exceptions import EmptyResult


class SpeciesTriple(NamedTuple):
    qubit: SpeciesRecord
    detection: SpeciesRecord
    cooling: SpeciesRecord

    def names(self) -> tuple[str, str, str]:
        return self.qubit.name, self.detection.name, self.cooling.name

    def to_dict(self) -> dict:
        return {
            "qubit": self.qubit.name,
            "detection": self.detection.name,
            "cooling": self.cooling.name,
            "tau_5/2_s": self.detection.tau_fivehalf_s,
            "qubit_detection_ratio": round(mass_ratio(self.qubit, self.detection), 4),
            "qubit_cooling_ratio": round(mass_ratio(self.qubit, self.cooling), 4),
        }


@dataclass(frozen=True)
class TripleOptions:
    """
    Selection filters applied on top of the hard constraints.

    best_detection_only: drop a triple when the same qubit has a triple with a
        longer-lived detection species at no larger mass ratio. Whether a triple
        is dropped does not depend on the ratio bound, so loosening the bound only
        ever adds triples.
    reserve_prime_detection: the element with the longest D5/2 lifetime is used
        for detection only.
    spinful_cooling_fallback: an element without a spin-free isotope in the
        database may cool with its only isotope.
    """

    best_detection_only: bool = True
    reserve_prime_detection: bool = True
    spinful_cooling_fallback: bool = True


def mass_ratio(a: SpeciesRecord, b: SpeciesRecord) -> float:
    return max(a.mass_amu, b.mass_amu) / min(a.mass_amu, b.mass_amu)


def triple_ratio(triple: SpeciesTriple) -> float:
    """Worst mass ratio between the qubit and either co-trapped partner."""
    return max(mass_ratio(triple.qubit, triple.detection), mass_ratio(triple.qubit, triple.cooling))


def allowed_species(
    db: SpeciesDatabase | None = None,
    material: SurfaceMaterial | str = SurfaceMaterial.ALUMINUM,
    cutoff_nm: float | None = None,
) -> list[SpeciesRecord]:
    """Species whose driving wavelengths all sit at or above the photoelectric cutoff."""
    db = db if db is not None else bundled_species()
    cutoff = SurfaceMaterial(material).cutoff_wavelength_nm if cutoff_nm is None else cutoff_nm
    return [r for r in db if min(r.driving_wavelengths_nm) >= cutoff]


def _prime_detection_element(candidates: list[SpeciesRecord]) -> str | None:
    detectors = [r for r in candidates if r.has_d_state]
    if not detectors:
        return None
    return max(detectors, key=lambda r: r.tau_fivehalf_s).element


def _cooling_pool(pool: list[SpeciesRecord], options: TripleOptions) -> list[SpeciesRecord]:
    cooling = [r for r in pool if not r.has_spin]
    if options.spinful_cooling_fallback:
        spin_free = {r.element for r in cooling}
        cooling += [r for r in pool if r.element not in spin_free and len([p for p in pool if p.element == r.element]) == 1]
    return cooling


def _undominated(triples: list[SpeciesTriple]) -> list[SpeciesTriple]:
    kept = []
    for triple in triples:
        ratio = triple_ratio(triple)
        dominated = any(
            other.qubit.name == triple.qubit.name
            and other.detection.tau_fivehalf_s > triple.detection.tau_fivehalf_s
            and triple_ratio(other) <= ratio
            for other in triples
        )
        if not dominated:
            kept.append(triple)
    return kept


def enumerate_triples(
    material: SurfaceMaterial | str = SurfaceMaterial.ALUMINUM,
    max_mass_ratio: float = 3.0,
    options: TripleOptions | None = None,
    db: SpeciesDatabase | None = None,
) -> list[SpeciesTriple]:
    """
    Enumerate (qubit, detection, cooling) species triples.

    The qubit needs a nuclear spin, detection and cooling species need none, and
    the detection species needs a long-lived D5/2 level. The three elements are
    distinct, and the mass ratio is bounded between the qubit and each co-trapped
    partner. Results are ordered by detection lifetime, longest first.

    Args:
        material: Trap surface material
        max_mass_ratio: Largest allowed heavier/lighter mass ratio, at least 1
        options: Selection filters
        db: Species database, bundled by default

    Returns:
        list[SpeciesTriple]: Ranked triples

    Raises:
        EmptyResult: No triple satisfies the constraints
    """
    if max_mass_ratio < 1:
        raise ValueError("max_mass_ratio must be at least 1")
    options = options or TripleOptions()
    pool = allowed_species(db, material)
    prime = _prime_detection_element(pool) if options.reserve_prime_detection else None

    qubits = [r for r in pool if r.has_spin and r.element != prime]
    detections = [r for r in pool if not r.has_spin and r.has_d_state]
    coolings = [r for r in _cooling_pool(pool, options) if r.element != prime]

    candidates = [
        SpeciesTriple(qubit, det, cool)
        for qubit in qubits
        for det in detections
        if det.element != qubit.element
        for cool in coolings
        if cool.element not in (qubit.element, det.element)
    ]
    if options.best_detection_only:
        candidates = _undominated(candidates)
    triples = [t for t in candidates if triple_ratio(t) <= max_mass_ratio]

    if not triples:
        raise EmptyResult(f"no species triple for {SurfaceMaterial(material).value} at mass ratio {max_mass_ratio}")
    triples.sort(key=lambda t: (-t.detection.tau_fivehalf_s, t.qubit.mass_amu, t.cooling.mass_amu))
    logger.info(f"{len(triples)} species triples for {SurfaceMaterial(material).value}, ratio {max_mass_ratio}")
    return triples


def be_exclusion_check(
    material: SurfaceMaterial | str = SurfaceMaterial.ALUMINUM,
    ratio: float = 3.0,
    options: TripleOptions | None = None,
    db: SpeciesDatabase | None = None,
) -> bool:
    """True when beryllium appears in no triple under the given constraints."""
    try:
        triples = enumerate_triples(material, ratio, options, db)
    except EmptyResult:
        return True
    return all("Be" not in (t.qubit.element, t.detection.element, t.cooling.element) for t in triples)
