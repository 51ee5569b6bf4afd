"""
Executable theorem checks for revolve.
"""

from .closed_forms import (
    segment_k, segment_k_dt, segment_k_d2t, circle_kinf, circle_kinf_d2t, circle_kinf_sym,
    circle_kinf_sym_dt, circle_kappa_terms,
)
from .kernel_checks import check_horizontal_monotonicity
from .curve_checks import check_convexity, check_kappa, kernel_d2t
from .support_checks import check_support_in_aplus, check_pi3, potential_slope
from .limit_checks import check_kr_limit, check_sandwich, kr_limit_errors, weak_star_distances
from .runner import TheoremChecker, aplus_curve

__all__ = [
    'segment_k', 'segment_k_dt', 'segment_k_d2t', 'circle_kinf', 'circle_kinf_d2t', 'circle_kinf_sym',
    'circle_kinf_sym_dt', 'circle_kappa_terms',
    'check_horizontal_monotonicity', 'check_convexity', 'check_kappa', 'kernel_d2t',
    'check_support_in_aplus', 'check_pi3', 'potential_slope',
    'check_kr_limit', 'check_sandwich', 'kr_limit_errors', 'weak_star_distances',
    'TheoremChecker', 'aplus_curve',
]
