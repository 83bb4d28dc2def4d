from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import KakeyaError
from .fit_oracle import FitReport, SweepReport, fits_translated, max_scale, sweep_fit
from .geom_core import (
    Ball,
    ConvexPolygon,
    HPolytope,
    Rotation,
    VPolytope3,
    contains,
    rotate,
    scale,
    support,
    translate,
)
from .inball_lp import chebyshev_center, erosion, min_width, solve_lp
from .minkowski import halfway, interpolate, measure, minkowski_sum, steiner_coeffs3
from .mu_algebra import MuVector, mu_average_poly, mu_average_vec, mu_rotate, phi, polygon_from_phi
from .parser import dump_shape, load_shape, parse_shape
from .verify import ExperimentReport, KakeyaVerifier, reproduce, run_suite

__all__ = [
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "KakeyaError",
    "FitReport",
    "SweepReport",
    "fits_translated",
    "max_scale",
    "sweep_fit",
    "Ball",
    "ConvexPolygon",
    "HPolytope",
    "Rotation",
    "VPolytope3",
    "contains",
    "rotate",
    "scale",
    "support",
    "translate",
    "chebyshev_center",
    "erosion",
    "min_width",
    "solve_lp",
    "halfway",
    "interpolate",
    "measure",
    "minkowski_sum",
    "steiner_coeffs3",
    "MuVector",
    "mu_average_poly",
    "mu_average_vec",
    "mu_rotate",
    "phi",
    "polygon_from_phi",
    "dump_shape",
    "load_shape",
    "parse_shape",
    "ExperimentReport",
    "KakeyaVerifier",
    "reproduce",
    "run_suite",
]
