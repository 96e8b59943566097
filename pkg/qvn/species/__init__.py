from qvn.species.database import SpeciesDatabase, SpeciesRecord, SurfaceMaterial, bundled_species, load_species, parse_species
from qvn.species.selection import (
    SpeciesTriple,
    TripleOptions,
    allowed_species,
    be_exclusion_check,
    enumerate_triples,
    mass_ratio,
)

__all__ = [
    "SpeciesDatabase",
    "SpeciesRecord",
    "SpeciesTriple",
    "SurfaceMaterial",
    "TripleOptions",
    "allowed_species",
    "be_exclusion_check",
    "bundled_species",
    "enumerate_triples",
    "load_species",
    "mass_ratio",
    "parse_species",
]
