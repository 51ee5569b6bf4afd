"""
Support detection for discrete equilibrium measures.
"""

from typing import Optional

import numpy as np

from ..core.config import Config
from ..core.exceptions import ValidationError
from ..core.models import DiscreteMeasure, SupportEstimate

MIRROR_TOL = 1e-9


def wrapped_angles(params: np.ndarray) -> np.ndarray:
    """Circle angles mapped to (-pi, pi]."""
    return np.angle(np.exp(1j * np.asarray(params, dtype=float)))


def is_mirror_pair(m: DiscreteMeasure, i: int, j: int) -> bool:
    """True when nodes i and j share x and sit symmetrically about the node set's mid-height."""
    if i == j:
        return False
    xi, yi = m.nodes[i]
    xj, yj = m.nodes[j]
    mid = 0.5 * (m.nodes[:, 1].min() + m.nodes[:, 1].max())
    scale = 1.0 + max(abs(xi), abs(yi), abs(xj), abs(yj))
    return abs(xi - xj) <= MIRROR_TOL * scale and abs((yi + yj) - 2.0 * mid) <= MIRROR_TOL * scale and yi != yj


def support_estimate(m: DiscreteMeasure, threshold: Optional[float] = None) -> SupportEstimate:
    """Thresholded support of a measure whose nodes carry curve parameters.

    Args:
        m: Measure with params
        threshold: Active-weight threshold (Config.SUPPORT_THRESHOLD_SCALE / n when None)

    Returns:
        SupportEstimate: Active nodes, hull interval, arc angles and degeneracy flag

    Raises:
        ValidationError: Missing parameters or no node above the threshold
    """
    if m.params is None:
        raise ValidationError("Support estimates need nodes with curve parameters")
    if threshold is None:
        threshold = Config.SUPPORT_THRESHOLD_SCALE / m.n
    active = np.flatnonzero(m.weights > threshold)
    if active.size == 0:
        raise ValidationError(f"No node carries more than {threshold} of the mass")

    params = m.params
    interval = (float(params[active].min()), float(params[active].max()))

    # contiguous: no inactive node between active ones in parameter order
    order = np.argsort(params, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    active_ranks = np.sort(rank[active])
    contiguous = bool(active_ranks[-1] - active_ranks[0] + 1 == active_ranks.size)

    heaviest = np.argsort(-m.weights, kind="stable")[:2]
    two_point = False
    if m.n >= 2:
        top_mass = float(m.weights[heaviest].sum())
        two_point = top_mass >= 1.0 - 2.0 * threshold * m.n and is_mirror_pair(m, int(heaviest[0]), int(heaviest[1]))

    theta = theta_m = None
    if m.angular:
        # angles from the outermost point, wrapped to (-pi, pi]
        angles = np.abs(wrapped_angles(params))
        theta = float(angles[active].max())
        theta_m = float(angles.min())

    return SupportEstimate(
        active_indices=active.tolist(),
        interval=interval,
        threshold=threshold,
        active_mass=float(m.weights[active].sum()),
        contiguous=contiguous,
        two_point_degenerate=bool(two_point),
        theta=theta,
        theta_m=theta_m,
    )
