"""
Convexity of kernels along generator curves and the curvature conditions behind it.
"""

from typing import Optional

import numpy as np

from ..core.config import Config
from ..core.exceptions import ConfigurationError, DegenerateFrameError
from ..core.models import CheckReport, KernelSpec, KernelVariant
from ..geometry.curves import Circle, GeneratorCurve, VerticalSegment
from ..kernels.matrix import planar_values
from ..utils.logging_utils import get_logger
from .closed_forms import circle_kappa_terms, circle_kinf_d2t, segment_k_d2t

logger = get_logger(__name__)

MAX_DETAILS = 20
CROSS_CHECK_TOL = 1e-8


def _distance_derivatives(curve: GeneratorCurve, t: np.ndarray, w: np.ndarray, shift: float = 0.0):
    """r_w, r_w', r_w'' of r_w(t) = |gamma(t) + shift - w| in the native parameter."""
    p = curve.evaluate(t, check=False) + np.array([shift, 0.0])
    d1 = curve.derivative(t, 1, check=False)
    d2 = curve.derivative(t, 2, check=False)
    diff = p - w
    r = np.hypot(diff[:, 0], diff[:, 1])
    u = diff / r[:, None]
    r1 = np.sum(d1 * u, axis=1)
    r2 = np.sum(d2 * u, axis=1) + (np.sum(d1 * d1, axis=1) - r1 * r1) / r
    return r, r1, r2


def _reduced_k_d2(curve: GeneratorCurve, t: np.ndarray, w: np.ndarray, shift: float = 0.0) -> np.ndarray:
    w_shifted = w + np.array([shift, 0.0])
    reflected = np.array([-w_shifted[0], w_shifted[1]])
    r, r1, r2 = _distance_derivatives(curve, t, w_shifted, shift)
    q, q1, q2 = _distance_derivatives(curve, t, reflected, shift)
    total, first, second = r + q, r1 + q1, r2 + q2
    return -(second * total - first * first) / (total * total)


def _k_inf_d2(curve: GeneratorCurve, t: np.ndarray, w: np.ndarray) -> np.ndarray:
    _, _, r2 = _distance_derivatives(curve, t, w)
    return -curve.derivative(t, 2, check=False)[:, 0] - r2


def analytic_d2t(curve: GeneratorCurve, spec: KernelSpec, t: np.ndarray, w: np.ndarray) -> np.ndarray:
    """d^2/dt^2 k(gamma(t), w) from the derivatives of the distance functions r_w and r_{w*}."""
    variant = spec.variant
    if variant is KernelVariant.REDUCED_K:
        return _reduced_k_d2(curve, t, w)
    if variant is KernelVariant.SCALED_KR:
        return 2.0 * spec.R * _reduced_k_d2(curve, t, w, shift=spec.R)
    if variant is KernelVariant.LIMIT_KINF:
        return _k_inf_d2(curve, t, w)
    if variant is KernelVariant.SYMMETRIZED_KINF:
        mirrored = np.array([w[0], 2.0 * spec.axis_y - w[1]])
        return 0.5 * (_k_inf_d2(curve, t, w) + _k_inf_d2(curve, t, mirrored))
    raise ConfigurationError(f"{spec.label} is not a half-plane kernel")


def finite_difference_d2t(curve: GeneratorCurve, spec: KernelSpec, t: np.ndarray, w: np.ndarray,
                          h: float = Config.FD_STEP) -> np.ndarray:
    """Central second difference in t; near-zero values are refined by Richardson at h/2."""
    def second_difference(step: float) -> np.ndarray:
        values = [
            planar_values(spec, p[:, 0], p[:, 1], w[0], w[1])
            for p in (curve.evaluate(t + step, check=False), curve.evaluate(t, check=False),
                      curve.evaluate(t - step, check=False))
        ]
        return (values[0] - 2.0 * values[1] + values[2]) / step ** 2

    coarse = second_difference(h)
    small = np.abs(coarse) <= 10.0 * h * h
    if np.any(small):
        fine = second_difference(0.5 * h)
        coarse = np.where(small, (4.0 * fine - coarse) / 3.0, coarse)
    return coarse


def closed_form_available(curve: GeneratorCurve, spec: KernelSpec) -> bool:
    if isinstance(curve, VerticalSegment) and spec.variant is KernelVariant.REDUCED_K:
        return True
    return isinstance(curve, Circle) and spec.variant is KernelVariant.LIMIT_KINF


def kernel_d2t(curve: GeneratorCurve, spec: KernelSpec, t: np.ndarray, s: float, method: str = "auto") -> np.ndarray:
    """d^2/dt^2 k(gamma(t), gamma(s)) by closed form, distance-function formulas or finite differences.

    Args:
        method: 'auto', 'closed', 'analytic' or 'fd'
    """
    t = np.asarray(t, dtype=float)
    if method == "auto":
        method = "closed" if closed_form_available(curve, spec) else "analytic"
    if method == "closed":
        if isinstance(curve, VerticalSegment) and spec.variant is KernelVariant.REDUCED_K:
            return segment_k_d2t(t, s, curve.abscissa)
        if isinstance(curve, Circle) and spec.variant is KernelVariant.LIMIT_KINF:
            return circle_kinf_d2t(t, s, curve.radius)
        raise ConfigurationError(f"No closed form for {spec.label} on {curve.kind}")
    w = curve.evaluate(float(s), check=False)
    if method == "analytic":
        return analytic_d2t(curve, spec, t, w)
    if method == "fd":
        return finite_difference_d2t(curve, spec, t, w)
    raise ConfigurationError(f"Unknown differentiation method {method!r}")


def convexity_guaranteed(curve: GeneratorCurve, spec: KernelSpec) -> bool:
    """Instances where strict convexity is a theorem rather than an experiment."""
    if isinstance(curve, VerticalSegment):
        return spec.variant in (KernelVariant.REDUCED_K, KernelVariant.SCALED_KR)
    if isinstance(curve, Circle):
        lo, hi = curve.domain
        on_aplus = lo >= -0.5 * np.pi - 1e-12 and hi <= 0.5 * np.pi + 1e-12
        return on_aplus and spec.variant in (KernelVariant.REDUCED_K, KernelVariant.SCALED_KR,
                                             KernelVariant.LIMIT_KINF)
    return False


def check_convexity(curve: GeneratorCurve, spec: KernelSpec, grid_size: int = Config.GRID_SIZE,
                    method: str = "auto", instance: Optional[str] = None) -> CheckReport:
    """Strict convexity of t -> k(gamma(t), gamma(s)) on [a, s] and [s, b] over an (s, t) grid.

    Cells with s = t are skipped and counted in the notes.

    Raises:
        DegenerateFrameError: Curve is not twice differentiable
    """
    if not curve.twice_differentiable:
        raise DegenerateFrameError(f"Convexity needs a twice differentiable curve, got {curve.kind}")
    if not spec.is_planar:
        raise ConfigurationError(f"Convexity is checked for planar kernels, got {spec.label}")

    lo, hi = curve.domain
    grid = np.linspace(lo, hi, grid_size)
    margin = np.inf
    failures = []
    for i, s in enumerate(grid):
        t = np.delete(grid, i)
        values = kernel_d2t(curve, spec, t, float(s), method)
        cell_margin = values - Config.STRICT_MARGIN
        margin = min(margin, float(cell_margin.min()))
        for k in np.flatnonzero(cell_margin < 0.0)[:MAX_DETAILS - len(failures)]:
            failures.append({"s": float(s), "t": float(t[k]), "value": float(values[k])})

    used = method if method != "auto" else ("closed" if closed_form_available(curve, spec) else "analytic")
    report = CheckReport(
        name="convexity",
        instance=instance or f"{curve.kind} / {spec.label}",
        margin=margin,
        resolution=f"{grid_size}x{grid_size} (s,t) grid, {used} second derivative",
        guaranteed=convexity_guaranteed(curve, spec),
        details=failures,
        notes=f"{grid_size} diagonal cells s = t skipped; strictness certified as value > {Config.STRICT_MARGIN}",
    )
    logger.debug(f"convexity {report.instance}: margin {margin:.3e}")
    return report


def frame_arrays(curve: GeneratorCurve, t: np.ndarray):
    """Points, unit normals and curvatures at many parameters.

    Raises:
        DegenerateFrameError: A frame has zero curvature (no normal)
    """
    frames = [curve.frame(float(value)) for value in t]
    if any(not frame.has_normal for frame in frames):
        raise DegenerateFrameError(f"Curvature conditions need kappa > 0 on the whole {curve.kind}")
    points = np.array([[f.point.x, f.point.y] for f in frames])
    normals = np.array([f.normal for f in frames])
    curvature = np.array([f.curvature for f in frames])
    return points, normals, curvature


def check_kappa(curve: GeneratorCurve, grid_size: int = Config.GRID_SIZE, instance: Optional[str] = None) -> CheckReport:
    """Curvature conditions N.u_w < 0 and kappa + N.u_w / r_w > 0 for w in {gamma(s), gamma(s)_*}.

    Circles are cross-validated against their closed forms.

    Raises:
        DegenerateFrameError: Zero curvature or no frames on this curve
    """
    lo, hi = curve.domain
    grid = np.linspace(lo, hi, grid_size)
    is_circle = isinstance(curve, Circle)
    # frames are shared across rows
    points, normals, curvature = frame_arrays(curve, grid)

    margin = np.inf
    discrepancy = 0.0
    failures = []
    for i, s in enumerate(grid):
        keep = np.arange(grid_size) != i
        t = grid[keep]
        w = points[i]
        for reflected in (False, True):
            target = np.array([-w[0], w[1]]) if reflected else w
            diff = points[keep] - target
            r = np.hypot(diff[:, 0], diff[:, 1])
            c1 = np.sum(normals[keep] * diff, axis=1) / r
            c2 = curvature[keep] + c1 / r
            cell_margin = np.minimum(-c1, c2) - Config.STRICT_MARGIN
            margin = min(margin, float(cell_margin.min()))
            for k in np.flatnonzero(cell_margin < 0.0)[:MAX_DETAILS - len(failures)]:
                failures.append({"s": float(s), "t": float(t[k]), "reflected": reflected,
                                 "normal_term": float(c1[k]), "bracket": float(c2[k])})
            if is_circle:
                # circle parameters are angles about the circle's own center
                e1, e2 = circle_kappa_terms(t, s, curve.radius, curve.center[0], reflected)
                discrepancy = max(discrepancy, float(np.max(np.abs(e1 - c1))), float(np.max(np.abs(e2 - c2))))

    notes = f"strictness certified as margin > {Config.STRICT_MARGIN}"
    if is_circle:
        notes += f"; closed-form discrepancy {discrepancy:.3e}"
        margin = min(margin, CROSS_CHECK_TOL - discrepancy)

    guaranteed = is_circle and lo >= -0.5 * np.pi - 1e-12 and hi <= 0.5 * np.pi + 1e-12
    return CheckReport(
        name="kappa",
        instance=instance or curve.kind,
        margin=margin,
        resolution=f"{grid_size}x{grid_size} (s,t) grid, frame evaluation",
        guaranteed=guaranteed,
        details=failures,
        notes=notes,
    )
