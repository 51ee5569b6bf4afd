"""
Kernels of 3-space: Riesz s-kernel |p - q|^-s and logarithmic kernel log(1/|p - q|).
"""

import numpy as np
from scipy.spatial.distance import cdist, pdist

from ..core.exceptions import ConfigurationError, SingularEvaluationError
from ..core.models import KernelSpec, KernelVariant, SpacePoint


def _require_spatial(spec: KernelSpec) -> None:
    if not spec.is_spatial:
        raise ConfigurationError(f"{spec.label} is not a 3D kernel")


def values_from_distance(spec: KernelSpec, distance: np.ndarray) -> np.ndarray:
    """Kernel values from pairwise distances.

    Raises:
        SingularEvaluationError: If any distance is zero
    """
    _require_spatial(spec)
    if np.any(distance <= 0.0):
        raise SingularEvaluationError(f"{spec.label} is singular at coincident points")
    if spec.variant is KernelVariant.RIESZ_3D:
        return distance ** (-spec.s)
    return -np.log(distance)


def gradient_factor(spec: KernelSpec, distance: np.ndarray) -> np.ndarray:
    """Scalar c with grad_p k(p, q) = c (p - q)."""
    _require_spatial(spec)
    if spec.variant is KernelVariant.RIESZ_3D:
        return -spec.s * distance ** (-spec.s - 2.0)
    return -1.0 / distance ** 2


def distance_matrix(points_a: np.ndarray, points_b: np.ndarray) -> np.ndarray:
    """Euclidean distances between the rows of two (n, 3) arrays."""
    return cdist(np.asarray(points_a, dtype=float), np.asarray(points_b, dtype=float))


def pair_distances(points: np.ndarray) -> np.ndarray:
    """Condensed distances |p_i - p_j| for i < j, in row-major pair order."""
    return pdist(np.asarray(points, dtype=float))


def kernel_3d(p: SpacePoint, q: SpacePoint, spec: KernelSpec) -> float:
    """k_s(p, q) = |p - q|^-s or k_0(p, q) = log(1/|p - q|).

    Raises:
        SingularEvaluationError: If p = q
    """
    distance = float(np.linalg.norm(p.as_array() - q.as_array()))
    return float(values_from_distance(spec, np.asarray(distance)))
