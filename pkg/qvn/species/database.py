"""Ion species records and the surface materials they must coexist with."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from pydantic import ValidationError as PydanticValidationError
from scipy.constants import c, e, h

from database.repository import read_json, species_path
from logic.logging_config import configured_logger as logger
from model.schema import SpeciesRow
from qvn.utils.exceptions import ParseError

PHOTON_NM_EV = h * c / e * 1e9


@dataclass(frozen=True)
class SpeciesRecord:
    name: str
    element: str
    mass_amu: float
    nuclear_spin_I: Fraction
    omega0_GHz: float
    lambda_half_nm: float
    gamma_half_MHz: float
    lambda_threehalf_nm: float
    lambda_fivehalf_nm: float = 0.0
    tau_fivehalf_s: float = 0.0

    @property
    def has_spin(self) -> bool:
        return self.nuclear_spin_I != 0

    @property
    def has_d_state(self) -> bool:
        return self.lambda_fivehalf_nm > 0 and self.tau_fivehalf_s > 0

    @property
    def driving_wavelengths_nm(self) -> tuple[float, float]:
        return self.lambda_half_nm, self.lambda_threehalf_nm

    @classmethod
    def from_row(cls, row: SpeciesRow) -> "SpeciesRecord":
        return cls(
            name=row.ion,
            element=row.element,
            mass_amu=row.mass_amu,
            nuclear_spin_I=Fraction(row.spin),
            omega0_GHz=row.omega0_GHz,
            lambda_half_nm=row.lambda_half_nm,
            gamma_half_MHz=row.gamma_half_MHz,
            lambda_threehalf_nm=row.lambda_threehalf_nm,
            lambda_fivehalf_nm=row.lambda_fivehalf_nm,
            tau_fivehalf_s=row.tau_fivehalf_s,
        )


class SurfaceMaterial(str, Enum):
    GOLD = "gold"
    ALUMINUM = "aluminum"

    @property
    def work_function_eV(self) -> float:
        return WORK_FUNCTIONS_EV[self]

    @property
    def cutoff_wavelength_nm(self) -> float:
        """Longest wavelength that still ejects photoelectrons from the surface."""
        return PHOTON_NM_EV / self.work_function_eV


WORK_FUNCTIONS_EV = {SurfaceMaterial.GOLD: 5.3, SurfaceMaterial.ALUMINUM: 4.08}


class SpeciesDatabase:
    """Read-only collection of species records, in file order."""

    def __init__(self, records: list[SpeciesRecord]):
        self.records = tuple(records)
        self._by_name = {r.name: r for r in self.records}

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, name: str) -> SpeciesRecord:
        return self._by_name[name]

    def elements(self) -> set[str]:
        return {r.element for r in self.records}

    def isotopes_of(self, element: str) -> list[SpeciesRecord]:
        return [r for r in self.records if r.element == element]


def parse_species(document: dict, source: str = "<memory>") -> SpeciesDatabase:
    try:
        rows = [SpeciesRow.model_validate(item) for item in document["species"]]
    except (KeyError, TypeError) as err:
        raise ParseError(f"{source}: expected an object with a 'species' list", path=source) from err
    except PydanticValidationError as err:
        raise ParseError(f"{source}: {err}", path=source) from err
    return SpeciesDatabase([SpeciesRecord.from_row(row) for row in rows])


def load_species(path: str | Path | None = None) -> SpeciesDatabase:
    """
    Load the species database.

    Args:
        path: JSON file; defaults to ``species.json`` in the data directory

    Returns:
        SpeciesDatabase: Parsed records
    """
    path = Path(path) if path is not None else species_path()
    db = parse_species(read_json(path), str(path))
    logger.info(f"Loaded {len(db)} species from {path}")
    return db


@lru_cache(maxsize=1)
def bundled_species() -> SpeciesDatabase:
    return load_species()
