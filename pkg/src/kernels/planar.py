"""
Half-plane kernels.
The reduced kernel K, its quadrature oracle, the scaled kernel K_R, the limit kernel K_inf
and its symmetrized form, with gradients in the first argument.

Array functions take coordinate arrays (x, y) of z and (u, v) of w and broadcast.
"""

import numpy as np

from ..core.config import Config
from ..core.exceptions import ParameterDomainError, SingularEvaluationError
from ..core.models import PlanePoint

LOG_TWO = np.log(2.0)


def _safe_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """num / den with 0 where den == 0 (subgradient choice at coincidence)."""
    return np.divide(num, den, out=np.zeros(np.broadcast(num, den).shape), where=den > 0)


def log_trig_integral(a: float, b: float) -> float:
    """(1/2pi) * integral over [0, 2pi] of log(a + b cos t) = log((a + sqrt(a^2 - b^2)) / 2).

    Raises:
        ParameterDomainError: If a <= |b|
    """
    if not a > abs(b):
        raise ParameterDomainError(f"log_trig_integral needs a > |b|, got a={a}, b={b}")
    return float(np.log(0.5 * (a + np.sqrt((a - b) * (a + b)))))


# Reduced kernel K(z, w) = log(2 / (|z - w| + |z - w_*|))

def reduced_k_values(x, y, u, v) -> np.ndarray:
    d1 = np.hypot(x - u, y - v)
    d2 = np.hypot(x + u, y - v)
    total = d1 + d2
    if np.any(total == 0.0):
        raise SingularEvaluationError("K is singular at coincident points on the rotation axis")
    return np.log(2.0 / total)


def reduced_k_gradient(x, y, u, v):
    """(dK/dx, dK/dy) in the first argument."""
    d1 = np.hypot(x - u, y - v)
    d2 = np.hypot(x + u, y - v)
    total = d1 + d2
    if np.any(total == 0.0):
        raise SingularEvaluationError("K is singular at coincident points on the rotation axis")
    gx = -(_safe_ratio(x - u, d1) + _safe_ratio(x + u, d2)) / total
    gy = -(_safe_ratio(y - v, d1) + _safe_ratio(y - v, d2)) / total
    return gx, gy


def reduced_k(z: PlanePoint, w: PlanePoint) -> float:
    """Reduced kernel K(z, w) = log(2 / (|z - w| + |z - w_*|)).

    Raises:
        SingularEvaluationError: If z = w lies on the rotation axis
    """
    return float(reduced_k_values(z.x, z.y, w.x, w.y))


def reduced_k_quadrature(z: PlanePoint, w: PlanePoint, n: int = Config.QUADRATURE_NODES) -> float:
    """K(z, w) as the angular average of the 3D log kernel, by the periodic trapezoid rule.

    Nodes are shifted by half a step so t = 0 (the coincidence angle) is never sampled.

    Raises:
        ParameterDomainError: If n < 16
        SingularEvaluationError: As reduced_k
    """
    if n < Config.MIN_QUADRATURE_NODES:
        raise ParameterDomainError(f"Quadrature needs n >= {Config.MIN_QUADRATURE_NODES}, got {n}")
    if z.x == 0.0 and w.x == 0.0 and z.y == w.y:
        raise SingularEvaluationError("K is singular at coincident points on the rotation axis")
    t = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    r2 = z.x ** 2 + w.x ** 2 + (z.y - w.y) ** 2 - 2.0 * z.x * w.x * np.cos(t)
    return float(-0.5 * np.mean(np.log(r2)))


# Scaled kernel K_R(z, w) = 2R (K(R + z, R + w) + log R) = -2R log1p(eps)

def _kr_parts(x, y, u, v, R):
    X = x + u
    Y = y - v
    d1 = np.hypot(x - u, Y)
    d2 = np.hypot(2.0 * R + X, Y)
    eps = (d1 + (X * (4.0 * R + X) + Y * Y) / (d2 + 2.0 * R)) / (2.0 * R)
    return X, Y, d1, d2, eps


def _check_shift(x, u, R):
    if not R > 0:
        raise ParameterDomainError(f"K_R needs R > 0, got {R}")
    if np.any(np.asarray(x) + R < 0) or np.any(np.asarray(u) + R < 0):
        raise ParameterDomainError("K_R arguments shifted by R must lie in H+")


def scaled_kr_values(x, y, u, v, R: float) -> np.ndarray:
    _check_shift(x, u, R)
    X, Y, d1, d2, eps = _kr_parts(x, y, u, v, R)
    if np.any(d1 + d2 == 0.0):
        raise SingularEvaluationError("K_R is singular at coincident shifted axis points")
    return -2.0 * R * np.log1p(eps)


def scaled_kr_gradient(x, y, u, v, R: float):
    _check_shift(x, u, R)
    X, Y, d1, d2, eps = _kr_parts(x, y, u, v, R)
    scale = 1.0 / (1.0 + eps)
    gx = -(_safe_ratio(x - u, d1) + (2.0 * R + X) / d2) * scale
    gy = -(_safe_ratio(Y, d1) + Y / d2) * scale
    return gx, gy


def scaled_kr(z: PlanePoint, w: PlanePoint, R: float) -> float:
    """Scaled kernel 2R (K(R + z, R + w) + log R), evaluated without cancellation."""
    return float(scaled_kr_values(z.x, z.y, w.x, w.y, R))


# Limit kernel K_inf(z, w) = -((x + u) + |z - w|)

def k_inf_values(x, y, u, v) -> np.ndarray:
    return -((x + u) + np.hypot(x - u, y - v))


def k_inf_gradient(x, y, u, v):
    d1 = np.hypot(x - u, y - v)
    gx = -(1.0 + _safe_ratio(x - u, d1))
    gy = -_safe_ratio(y - v, d1)
    return gx, gy


def k_inf(z: PlanePoint, w: PlanePoint) -> float:
    """Limit kernel -(Re[z - w_*] + |z - w|); defined on the whole plane."""
    return float(k_inf_values(z.x, z.y, w.x, w.y))


def k_inf_sym_values(x, y, u, v, axis_y: float = 0.0) -> np.ndarray:
    return 0.5 * (k_inf_values(x, y, u, v) + k_inf_values(x, y, u, 2.0 * axis_y - v))


def k_inf_sym_gradient(x, y, u, v, axis_y: float = 0.0):
    gx1, gy1 = k_inf_gradient(x, y, u, v)
    gx2, gy2 = k_inf_gradient(x, y, u, 2.0 * axis_y - v)
    return 0.5 * (gx1 + gx2), 0.5 * (gy1 + gy2)


def k_inf_sym(z: PlanePoint, w: PlanePoint, axis_y: float = 0.0) -> float:
    """(K_inf(z, w) + K_inf(z, conj w)) / 2, conjugating about the line y = axis_y."""
    return float(k_inf_sym_values(z.x, z.y, w.x, w.y, axis_y))
