"""
Core combinatorics: root systems, spherical data and their Picard lattices.
"""

from .lattice import (
    CurveClass,
    DivisorClass,
    boundary_divisor,
    boundary_pairings,
    is_movable,
    pair,
)
from .rootsys import DynkinType, RootSystem, build_root_system
from .spherical import (
    DatumKind,
    SphericalDatum,
    build_datum,
    closed_orbit_datum,
    group_datum,
    subvariety_datum,
)

__all__ = [
    "CurveClass",
    "DivisorClass",
    "boundary_divisor",
    "boundary_pairings",
    "is_movable",
    "pair",
    "DynkinType",
    "RootSystem",
    "build_root_system",
    "DatumKind",
    "SphericalDatum",
    "build_datum",
    "closed_orbit_datum",
    "group_datum",
    "subvariety_datum",
]
