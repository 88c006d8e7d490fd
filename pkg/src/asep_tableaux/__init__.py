"""Exact computations for the open-boundary ASEP via staircase tableaux."""

from .asep import AsepParams, build_chain, check_symmetries, current, m_point, stationary_exact, stationary_tableaux
from .bijections import AlternativeTableau, PermutationTableau, alt_to_perm, alt_to_staircase, perm_to_alt, staircase_to_alt
from .errors import AsepError, CapacityError, DegeneracyError, DomainError, ShapeError, ValidationError
from .exactmath import GfPoly
from .moments import AwParams, compare_moments, moments_motzkin, moments_staircase
from .tableaux import StaircaseTableau, enumerate_tableaux, gf_by_type, gf_total, weight

__version__ = "0.1.0"

__all__ = [
    "AlternativeTableau",
    "AsepError",
    "AsepParams",
    "AwParams",
    "CapacityError",
    "DegeneracyError",
    "DomainError",
    "GfPoly",
    "PermutationTableau",
    "ShapeError",
    "StaircaseTableau",
    "ValidationError",
    "alt_to_perm",
    "alt_to_staircase",
    "build_chain",
    "check_symmetries",
    "compare_moments",
    "current",
    "enumerate_tableaux",
    "gf_by_type",
    "gf_total",
    "m_point",
    "moments_motzkin",
    "moments_staircase",
    "perm_to_alt",
    "staircase_to_alt",
    "stationary_exact",
    "stationary_tableaux",
    "weight",
]
