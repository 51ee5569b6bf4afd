"""
Localization of optimal points and equilibrium supports: A_+ membership and the pi/3 bound
for circles under the limit kernel.
"""

import math
from typing import List, Optional, Sequence, Union

import numpy as np

from ..core.config import Config
from ..core.exceptions import ValidationError
from ..core.models import (
    CheckReport, Configuration, DiscreteMeasure, EquilibriumOptions, KernelSpec, KernelVariant,
)
from ..equilibrium.solver import solve_on_curve
from ..equilibrium.support import support_estimate, wrapped_angles
from ..geometry.curves import Circle, GeneratorCurve
from ..geometry.rightmost import x_extent
from ..kernels.matrix import planar_gradient
from ..utils.logging_utils import get_logger
from .closed_forms import circle_kinf_sym_dt

logger = get_logger(__name__)

CurvesLike = Union[GeneratorCurve, Sequence[GeneratorCurve]]
MAX_DETAILS = 20
PI_THIRD = math.pi / 3.0
MASS_TOL = 0.01
CROSS_CHECK_TOL = 1e-8
SYMMETRY_TOL = 1e-9


def _curve_list(curves: CurvesLike) -> List[GeneratorCurve]:
    return [curves] if isinstance(curves, GeneratorCurve) else list(curves)


def _result_points(result: Union[Configuration, DiscreteMeasure]) -> np.ndarray:
    if isinstance(result, Configuration):
        return result.plane_points()
    threshold = Config.SUPPORT_THRESHOLD_SCALE / result.n
    return result.nodes[result.active_mask(threshold)]


def check_support_in_aplus(result: Union[Configuration, DiscreteMeasure], curves: CurvesLike,
                           tol: float = Config.APLUS_TOL, instance: Optional[str] = None) -> CheckReport:
    """Every optimized point or active node lies on the right-most part A_+ of the curves.

    The margin at a point (x, y) is x - x_A(y) + tol, with x_A the largest abscissa of the
    curves at height y.
    """
    curve_list = _curve_list(curves)
    points = _result_points(result)
    heights = np.concatenate([curve.sample(4097)[:, 1] for curve in curve_list])
    y_lo, y_hi = float(heights.min()), float(heights.max())

    margin = math.inf
    failures = []
    for x, y in points:
        y_probe = min(max(float(y), y_lo), y_hi)
        extents = [e for e in (x_extent(curve, y_probe) for curve in curve_list) if e is not None]
        x_a = max(extents) if extents else float(x)
        point_margin = float(x) - x_a + tol
        margin = min(margin, point_margin)
        if point_margin < 0.0 and len(failures) < MAX_DETAILS:
            failures.append({"x": float(x), "y": float(y), "x_A": x_a})

    kinds = "+".join(curve.kind for curve in curve_list)
    return CheckReport(
        name="aplus",
        instance=instance or f"{kinds}, {len(points)} points",
        margin=margin,
        resolution=f"x_A from {Config.PROFILE_SAMPLES}-segment curve profiles, tolerance {tol}",
        guaranteed=True,
        details=failures,
    )


def _validate_circles(curves: List[GeneratorCurve]) -> Circle:
    if not curves or not all(isinstance(curve, Circle) for curve in curves):
        raise ValidationError("The pi/3 check runs on circles or arcs of one circle")
    first = curves[0]
    for curve in curves[1:]:
        if curve.center != first.center or curve.radius != first.radius:
            raise ValidationError("All arcs must belong to the same circle")
    return first


def _check_symmetric(m: DiscreteMeasure, axis_y: float) -> None:
    nodes = m.nodes
    mirrored = np.column_stack([nodes[:, 0], 2.0 * axis_y - nodes[:, 1]])
    a = nodes[np.lexsort((nodes[:, 1], nodes[:, 0]))]
    b = mirrored[np.lexsort((mirrored[:, 1], mirrored[:, 0]))]
    scale = 1.0 + float(np.abs(nodes).max())
    if not np.allclose(a, b, rtol=0.0, atol=SYMMETRY_TOL * scale):
        raise ValidationError(f"Node set is not symmetric about y = {axis_y}")


def _closest_angle(curves: List[Circle]) -> float:
    """theta_m: smallest |t| over the arcs."""
    best = math.inf
    for curve in curves:
        lo, hi = curve.domain
        best = min(best, 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi)))
    return best


def _node_spacing(curves: List[Circle], n_nodes: int) -> float:
    spacings = []
    for curve in curves:
        lo, hi = curve.domain
        spacings.append((hi - lo) / (n_nodes if curve.periodic or n_nodes == 1 else n_nodes - 1))
    return max(spacings)


def potential_slope(m: DiscreteMeasure, circle: Circle, t: np.ndarray) -> np.ndarray:
    """d/dt of the symmetrized limit-kernel potential of m along the circle."""
    spec = KernelSpec(KernelVariant.SYMMETRIZED_KINF, axis_y=circle.center[1])
    points = circle.evaluate(t, check=False)
    gx, gy = planar_gradient(spec, points[:, 0:1], points[:, 1:2], m.nodes[None, :, 0], m.nodes[None, :, 1])
    tangent = circle.derivative(t, 1, check=False)
    return (gx * tangent[:, 0:1] + gy * tangent[:, 1:2]) @ m.weights


def check_pi3(curves: CurvesLike, measure: Optional[DiscreteMeasure] = None, n_nodes: int = Config.EQ_NODES,
              options: Optional[EquilibriumOptions] = None, instance: Optional[str] = None) -> CheckReport:
    """Support bound theta <= pi/3 of the limit-kernel equilibrium on a circle or symmetric arcs.

    When no node of A lies within pi/3 of the outermost point the measure must instead
    split into two masses of 1/2 at the angles +/- theta_m. In both cases the potential
    must increase along the circle beyond the support.

    Args:
        curves: A circle, or arcs of one circle placed symmetrically about its horizontal diameter
        measure: Solved measure with angular params (solved here under Kinf when None)
        n_nodes: Nodes per arc when solving

    Raises:
        ValidationError: Non-circular curves or an asymmetric node set
    """
    curve_list = _curve_list(curves)
    circle = _validate_circles(curve_list)
    axis_y = circle.center[1]
    if measure is None:
        measure, _ = solve_on_curve(curve_list, KernelSpec(KernelVariant.LIMIT_KINF), n_nodes, options=options)
        spacing = _node_spacing(curve_list, n_nodes)
    else:
        spacing = _node_spacing(curve_list, measure.n // len(curve_list))
    if measure.params is None or not measure.angular:
        raise ValidationError("The pi/3 check needs a measure carrying circle angles")
    _check_symmetric(measure, axis_y)

    estimate = support_estimate(measure)
    theta_m = _closest_angle(curve_list)
    degenerate = theta_m > PI_THIRD
    failures = []
    margins = {}

    if not degenerate:
        margins["theta"] = PI_THIRD + 2.0 * spacing - estimate.theta
        tail_start = max(estimate.theta, PI_THIRD)
        notes = f"theta = {estimate.theta:.6f}, bound pi/3 + 2 spacing = {PI_THIRD + 2.0 * spacing:.6f}"
    else:
        heaviest = np.argsort(-measure.weights, kind="stable")[:2]
        masses = measure.weights[heaviest]
        angles = np.abs(wrapped_angles(measure.params[heaviest]))
        margins["two_point"] = 0.0 if estimate.two_point_degenerate else -1.0
        margins["masses"] = float(MASS_TOL - np.abs(masses - 0.5).max())
        margins["angles"] = float(spacing - np.abs(angles - theta_m).max())
        tail_start = theta_m
        notes = (f"two-point split at theta_m = {theta_m:.6f}: masses {masses.tolist()}, "
                 f"angles {angles.tolist()}")

    params = wrapped_angles(measure.params)
    tail = np.unique(params[(params > tail_start) & (params <= 0.5 * math.pi)])
    if tail.size:
        slopes = potential_slope(measure, circle, tail)
        expected = circle.radius * (circle_kinf_sym_dt(tail[:, None], np.abs(params)[None, :]) @ measure.weights)
        discrepancy = float(np.abs(slopes - expected).max())
        margins["tail"] = float(slopes.min()) - Config.STRICT_MARGIN
        margins["tail_closed_form"] = CROSS_CHECK_TOL - discrepancy
        for k in np.flatnonzero(slopes <= Config.STRICT_MARGIN)[:MAX_DETAILS]:
            failures.append({"t": float(tail[k]), "slope": float(slopes[k])})
        notes += f"; potential slope on {tail.size} tail nodes, closed-form discrepancy {discrepancy:.3e}"

    margin = min(margins.values())
    failures.extend({"condition": name, "margin": value} for name, value in margins.items() if value < 0.0)
    logger.debug(f"pi/3 check margins: {margins}")
    return CheckReport(
        name="pi3",
        instance=instance or f"circle center {circle.center}, r = {circle.radius!r}, {len(curve_list)} arc(s)",
        margin=float(margin),
        resolution=f"{measure.n} nodes, spacing {spacing:.6f}",
        guaranteed=True,
        details=failures,
        notes=notes,
    )
