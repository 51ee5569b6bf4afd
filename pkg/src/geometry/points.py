"""
Point operations of the half-plane model.
Reflection in the rotation axis, rotation about the y-axis and lifting to surfaces of revolution.
"""

import numpy as np

from ..core.exceptions import ParameterDomainError
from ..core.models import PlanePoint, SpacePoint


def reflect(w: PlanePoint) -> PlanePoint:
    """Reflection w_* = -conj(w) of a point in the y-axis."""
    return PlanePoint(-w.x, w.y)


def rotate(p: SpacePoint, t: float) -> SpacePoint:
    """Rotate a point about the y-axis through angle t."""
    c, s = np.cos(t), np.sin(t)
    return SpacePoint(p.x * c - p.zeta * s, p.y, p.x * s + p.zeta * c)


def lift_to_surface(z: PlanePoint, phi: float) -> SpacePoint:
    """Point of the surface of revolution swept by z, at rotation angle phi.

    Raises:
        ParameterDomainError: If z lies left of the rotation axis
    """
    if z.x < 0:
        raise ParameterDomainError(f"Cannot lift a point with negative x = {z.x}")
    return SpacePoint(z.x * np.cos(phi), z.y, z.x * np.sin(phi))


def lift_arrays(x: np.ndarray, y: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Vectorized lift; returns an (n, 3) array of (x cos phi, y, x sin phi)."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ParameterDomainError("Cannot lift points with negative x")
    phi = np.asarray(phi, dtype=float)
    return np.stack([x * np.cos(phi), np.asarray(y, dtype=float) * np.ones_like(phi), x * np.sin(phi)], axis=-1)


def rotation_distance_squared(z: PlanePoint, w: PlanePoint, t: float) -> float:
    """|sigma_t(z) - w|^2 = x^2 + u^2 + (y - v)^2 - 2xu cos t."""
    return z.x ** 2 + w.x ** 2 + (z.y - w.y) ** 2 - 2.0 * z.x * w.x * np.cos(t)
