"""
Interaction kernels for revolve.
"""

from .three_d import kernel_3d, distance_matrix, pair_distances
from .planar import (
    log_trig_integral, reduced_k, reduced_k_quadrature, scaled_kr, k_inf, k_inf_sym,
)
from .matrix import (
    evaluate_kernel, kernel_matrix, kernel_diagonal, pair_gradients, planar_values, planar_gradient,
)

__all__ = [
    'kernel_3d', 'distance_matrix', 'pair_distances',
    'log_trig_integral', 'reduced_k', 'reduced_k_quadrature', 'scaled_kr', 'k_inf', 'k_inf_sym',
    'evaluate_kernel', 'kernel_matrix', 'kernel_diagonal', 'pair_gradients', 'planar_values',
    'planar_gradient',
]
