"""
Kernel dispatch and pairwise kernel matrices.
Matrices are built in row blocks; with REVOLVE_THREADS > 1 the blocks are evaluated on a
thread pool and stacked in block order, so the result does not depend on the thread count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from ..core.config import Config
from ..core.exceptions import ConfigurationError, SingularEvaluationError
from ..core.models import KernelSpec, KernelVariant, PlanePoint, SpacePoint
from ..utils.logging_utils import get_logger
from . import planar
from .three_d import distance_matrix, gradient_factor, kernel_3d, values_from_distance

logger = get_logger(__name__)


def planar_values(spec: KernelSpec, x, y, u, v) -> np.ndarray:
    """k(z, w) for a planar kernel on broadcast coordinate arrays."""
    variant = spec.variant
    if variant is KernelVariant.REDUCED_K:
        return planar.reduced_k_values(x, y, u, v)
    if variant is KernelVariant.SCALED_KR:
        return planar.scaled_kr_values(x, y, u, v, spec.R)
    if variant is KernelVariant.LIMIT_KINF:
        return planar.k_inf_values(x, y, u, v)
    if variant is KernelVariant.SYMMETRIZED_KINF:
        return planar.k_inf_sym_values(x, y, u, v, spec.axis_y)
    raise ConfigurationError(f"{spec.label} is not a half-plane kernel")


def planar_gradient(spec: KernelSpec, x, y, u, v) -> Tuple[np.ndarray, np.ndarray]:
    """Gradient of k(z, w) in z for a planar kernel."""
    variant = spec.variant
    if variant is KernelVariant.REDUCED_K:
        return planar.reduced_k_gradient(x, y, u, v)
    if variant is KernelVariant.SCALED_KR:
        return planar.scaled_kr_gradient(x, y, u, v, spec.R)
    if variant is KernelVariant.LIMIT_KINF:
        return planar.k_inf_gradient(x, y, u, v)
    if variant is KernelVariant.SYMMETRIZED_KINF:
        return planar.k_inf_sym_gradient(x, y, u, v, spec.axis_y)
    raise ConfigurationError(f"{spec.label} is not a half-plane kernel")


def evaluate_kernel(spec: KernelSpec, z: Union[PlanePoint, SpacePoint],
                    w: Union[PlanePoint, SpacePoint]) -> float:
    """k(z, w) for any kernel; 3D kernels take SpacePoints, planar kernels PlanePoints."""
    if spec.is_spatial:
        return kernel_3d(z, w, spec)
    return float(planar_values(spec, z.x, z.y, w.x, w.y))


def _row_blocks(n_rows: int) -> List[Tuple[int, int]]:
    step = Config.BLOCK_ROWS
    return [(lo, min(lo + step, n_rows)) for lo in range(0, n_rows, step)]


def _assemble(block_fn: Callable[[int, int], np.ndarray], n_rows: int) -> np.ndarray:
    blocks = _row_blocks(n_rows)
    threads = Config.max_threads()
    if threads > 1 and len(blocks) > 1:
        logger.debug(f"🔄 Evaluating {len(blocks)} row blocks on {threads} threads")
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda bounds: block_fn(*bounds), blocks))
    else:
        parts = [block_fn(lo, hi) for lo, hi in blocks]
    return np.concatenate(parts, axis=0)


def _block_coordinates(a: np.ndarray, b: np.ndarray, lo: int, hi: int, mask_diagonal: bool):
    """Broadcast first/second argument coordinates of rows lo:hi; diagonal pairs are
    replaced by a harmless stand-in so they can be evaluated and zeroed afterwards."""
    first = np.repeat(a[lo:hi, None, :], b.shape[0], axis=1)
    second = np.repeat(b[None, :, :], hi - lo, axis=0).copy()
    rows = np.arange(lo, hi)
    keep = rows < b.shape[0]
    if mask_diagonal:
        second[rows[keep] - lo, rows[keep], 0] = first[rows[keep] - lo, rows[keep], 0] + 1.0
    return first, second, rows[keep]


def kernel_matrix(spec: KernelSpec, points_a: np.ndarray, points_b: Optional[np.ndarray] = None,
                  exclude_diagonal: bool = False) -> np.ndarray:
    """Matrix k(a_i, b_j).

    Args:
        spec: Kernel in force; 3D kernels take (n, 3) arrays, planar kernels (n, 2)
        points_a: First arguments
        points_b: Second arguments (points_a when None)
        exclude_diagonal: Set the i = j entries of a self-interaction matrix to zero
            without evaluating them

    Raises:
        SingularEvaluationError: If an evaluated pair is singular
    """
    a = np.asarray(points_a, dtype=float)
    b = a if points_b is None else np.asarray(points_b, dtype=float)
    mask = exclude_diagonal and points_b is None

    def block(lo: int, hi: int) -> np.ndarray:
        if spec.is_spatial:
            distances = distance_matrix(a[lo:hi], b)
            rows = np.arange(lo, hi)
            if mask:
                distances[rows - lo, rows] = 1.0
            values = values_from_distance(spec, distances)
            if mask:
                values[rows - lo, rows] = 0.0
            return values
        first, second, rows = _block_coordinates(a, b, lo, hi, mask)
        values = planar_values(spec, first[..., 0], first[..., 1], second[..., 0], second[..., 1])
        if mask:
            values[rows - lo, rows] = 0.0
        return values

    return _assemble(block, a.shape[0])


def kernel_diagonal(spec: KernelSpec, points: np.ndarray) -> np.ndarray:
    """k(z_i, z_i) for a planar kernel.

    Raises:
        SingularEvaluationError: For 3D kernels, or K at an axis point
    """
    if spec.is_spatial:
        raise SingularEvaluationError(f"{spec.label} has no finite diagonal")
    p = np.asarray(points, dtype=float)
    return np.asarray(planar_values(spec, p[:, 0], p[:, 1], p[:, 0], p[:, 1]), dtype=float)


def pair_gradients(spec: KernelSpec, points: np.ndarray) -> np.ndarray:
    """Array G of shape (n, n, dim) with G[i, j] = grad of k(p_i, p_j) in p_i; G[i, i] = 0."""
    p = np.asarray(points, dtype=float)
    n = p.shape[0]

    def block(lo: int, hi: int) -> np.ndarray:
        rows = np.arange(lo, hi)
        if spec.is_spatial:
            diff = p[lo:hi, None, :] - p[None, :, :]
            distances = np.sqrt(np.sum(diff * diff, axis=-1))
            distances[rows - lo, rows] = 1.0
            if np.any(distances <= 0.0):
                raise SingularEvaluationError(f"{spec.label} gradient is singular at coincident points")
            grads = gradient_factor(spec, distances)[..., None] * diff
            grads[rows - lo, rows] = 0.0
            return grads
        first, second, rows = _block_coordinates(p, p, lo, hi, True)
        gx, gy = planar_gradient(spec, first[..., 0], first[..., 1], second[..., 0], second[..., 1])
        grads = np.stack([gx, gy], axis=-1)
        grads[rows - lo, rows] = 0.0
        return grads

    return _assemble(block, n)
