"""Exact weighted Ehrhart series and h*-polynomials of rational polytopes."""

from .analysis import (
    Verdict,
    WeightClass,
    check_monotonicity,
    check_nonneg_coeffs,
    classify_weight,
    h2_tensor,
    is_psd,
    nonneg_on_ray,
    triangle_conditions,
)
from .eulerian import eulerian_poly
from .geometry import HalfOpenSimplex, Polytope, decompose, pyramid, triangulate
from .oracle import verify_series, weighted_sum
from .parser import parse_polytope, parse_weight, weight_parts
from .poly import Poly, format_poly
from .series import HStarResult, hstar, hstar_ell_squared, hstar_mixed, ratfun_combine, series_expand
from .weights import LinearForm, Weight, WeightTerm, homogenize_weight

__all__ = [
    "HStarResult",
    "HalfOpenSimplex",
    "LinearForm",
    "Poly",
    "Polytope",
    "Verdict",
    "Weight",
    "WeightClass",
    "WeightTerm",
    "check_monotonicity",
    "check_nonneg_coeffs",
    "classify_weight",
    "decompose",
    "eulerian_poly",
    "format_poly",
    "h2_tensor",
    "homogenize_weight",
    "hstar",
    "hstar_ell_squared",
    "hstar_mixed",
    "is_psd",
    "nonneg_on_ray",
    "parse_polytope",
    "parse_weight",
    "pyramid",
    "ratfun_combine",
    "series_expand",
    "triangle_conditions",
    "triangulate",
    "verify_series",
    "weight_parts",
    "weighted_sum",
]
