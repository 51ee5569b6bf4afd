"""
Closed forms of kernels restricted to vertical segments and circles.
Used as oracles by the theorem checks.
"""

from typing import Tuple

import numpy as np


# Vertical segment gamma(t) = R + i t

def segment_k(t, s, R: float):
    """K(gamma(t), gamma(s)) = log 2 - log(|s - t| + sqrt(4R^2 + (s - t)^2))."""
    d = np.abs(np.asarray(s, dtype=float) - t)
    return np.log(2.0) - np.log(d + np.sqrt(4.0 * R * R + d * d))


def segment_k_dt(t, s, R: float):
    """d/dt K(gamma(t), gamma(s)) = sgn(s - t) / sqrt(4R^2 + (s - t)^2)."""
    d = np.asarray(s, dtype=float) - t
    return np.sign(d) / np.sqrt(4.0 * R * R + d * d)


def segment_k_d2t(t, s, R: float):
    """d^2/dt^2 K(gamma(t), gamma(s)) = |s - t| / (4R^2 + (s - t)^2)^(3/2)."""
    d = np.asarray(s, dtype=float) - t
    return np.abs(d) / (4.0 * R * R + d * d) ** 1.5


# Circle gamma(t) = (cx + r cos t, cy + r sin t)

def circle_kinf(t, s, radius: float = 1.0, center_x: float = 0.0):
    """K_inf(gamma(t), gamma(s)) = -(2 cx + r cos t + r cos s) - 2r |sin((s - t)/2)|."""
    return -(2.0 * center_x + radius * (np.cos(t) + np.cos(s))) - 2.0 * radius * np.abs(np.sin(0.5 * (s - t)))


def circle_kinf_d2t(t, s, radius: float = 1.0):
    """d^2/dt^2 K_inf(gamma(t), gamma(s)) = r cos t + (r/2) |sin((s - t)/2)| for s != t."""
    return radius * np.cos(t) + 0.5 * radius * np.abs(np.sin(0.5 * (s - t)))


def circle_kinf_sym(t, s):
    """Symmetrized limit kernel on the unit circle centered on the axis, for 0 <= s, t <= pi/2."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    above = -np.cos(s) - np.cos(t) - 2.0 * np.cos(0.5 * s) * np.sin(0.5 * t)
    below = -np.cos(s) - np.cos(t) - 2.0 * np.sin(0.5 * s) * np.cos(0.5 * t)
    return np.where(s < t, above, below)


def circle_kinf_sym_dt(t, s):
    """d/dt of circle_kinf_sym: sin t - cos(s/2) cos(t/2) for s < t, sin t + sin(s/2) sin(t/2) for t < s."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    above = np.sin(t) - np.cos(0.5 * s) * np.cos(0.5 * t)
    below = np.sin(t) + np.sin(0.5 * s) * np.sin(0.5 * t)
    return np.where(s < t, above, below)


def circle_kappa_terms(t, s, radius: float, center_x: float, reflected: bool) -> Tuple[np.ndarray, np.ndarray]:
    """N(t).u_w(t) and kappa(t) + N(t).u_w(t)/r_w(t) on a circle, for w = gamma(s) or its reflection.

    The unit-circle values are scaled: the first term is scale free, the bracket scales
    with 1/radius.
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    if not reflected:
        c1 = -np.abs(np.sin(0.5 * (s - t)))
        c2 = np.full(np.broadcast(t, s).shape, 0.5)
        return c1, c2 / radius
    rho = center_x / radius
    r_star_sq = (2.0 * rho + np.cos(t) + np.cos(s)) ** 2 + (np.sin(s) - np.sin(t)) ** 2
    c1 = -(2.0 * rho * np.cos(t) + 1.0 + np.cos(t + s)) / np.sqrt(r_star_sq)
    c2 = 0.5 + 2.0 * rho * (rho + np.cos(s)) / r_star_sq
    return c1, c2 / radius
