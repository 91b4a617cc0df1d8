"""Canonical heights, point searches and point counts for Mordell curves y^2 = x^3 + d."""

from .curve import (
    O,
    CurvePoint,
    MordellCurve,
    PrimitiveTriple,
    TorsionClass,
    add,
    from_primitive_triple,
    multiply,
    point,
    to_primitive_triple,
    torsion_subgroup,
)
from .heights import HeightValue, canonical_height, height_f, height_gap, naive_height_x
from .integer_lab import is_sixth_power_free, sixth_power_free_sieve, square_part
from .param import Decomposition, decompose, recompose
from .search import SearchBound, ZetaResult, brute_force_points, enumerate_points, zeta

__version__ = "0.1.0"
