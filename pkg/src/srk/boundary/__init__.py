"""Boundary behaviour of regular self-maps: approach regions, limits and theorem checkers."""

from .checks import (IDENTITY, boundary_schwarz_report, burns_krantz_report, halfspace_jc_report,
                     hopf_report, jc_ball_report, julia_check, julia_report, lindelof_check,
                     origin_data, radial_sweep, schwarz_pick_check, vanishing_order)
from .limits import (BoundaryLimit, LimitConfig, LimitEstimate, aitken, boundary_limit,
                     estimate_alpha, estimate_boundary_limit, extrapolate, linear_limit,
                     radial_quotient_limit, richardson)
from .regions import (Cone, Orisphere, Stolz, region_contains, sample_ball, sample_halfspace,
                      sample_region)
from .report import SWEEP_HEADER, BoundaryReport, Margin, serialize_value, write_sweep_csv

__all__ = [
    "Orisphere", "Stolz", "Cone", "region_contains", "sample_region", "sample_ball",
    "sample_halfspace", "LimitConfig", "LimitEstimate", "BoundaryLimit", "richardson",
    "linear_limit", "aitken", "extrapolate", "radial_quotient_limit", "estimate_alpha",
    "boundary_limit", "estimate_boundary_limit", "BoundaryReport", "Margin", "serialize_value",
    "write_sweep_csv", "SWEEP_HEADER", "IDENTITY", "schwarz_pick_check", "julia_check",
    "julia_report", "lindelof_check", "jc_ball_report", "hopf_report", "boundary_schwarz_report",
    "halfspace_jc_report", "vanishing_order", "burns_krantz_report", "radial_sweep", "origin_data",
]
