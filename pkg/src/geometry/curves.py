"""
Generator curves in the right half-plane.
Parametric circles, ellipses, vertical segments and polylines with differential frames.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from ..core.config import Config
from ..core.exceptions import DegenerateFrameError, GeometryError, ParameterDomainError
from ..core.models import CurveFrame, PlanePoint

ArrayLike = Union[float, Sequence[float], np.ndarray]

_DOMAIN_SLACK = 1e-12


class GeneratorCurve(ABC):
    """Abstract parametric curve gamma: [a, b] -> H+.

    Subclasses implement the unchecked position and derivatives; the public methods
    enforce the parameter domain.
    """

    kind: str = "curve"
    twice_differentiable: bool = True

    def __init__(self, domain: Tuple[float, float]):
        a, b = float(domain[0]), float(domain[1])
        if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
            raise GeometryError(f"Invalid parameter domain [{a}, {b}]")
        self._domain = (a, b)

    @property
    def domain(self) -> Tuple[float, float]:
        return self._domain

    @property
    def periodic(self) -> bool:
        """True when gamma(a) = gamma(b) and parameters wrap around."""
        return False

    @abstractmethod
    def _position(self, t: np.ndarray) -> np.ndarray:
        """Unchecked gamma(t) for a 1-D parameter array, shape (n, 2)."""

    @abstractmethod
    def _derivative(self, t: np.ndarray, order: int) -> np.ndarray:
        """Unchecked derivative of the given order, shape (n, 2)."""

    @abstractmethod
    def to_spec(self) -> Dict[str, Any]:
        """Curve-spec document of this curve."""

    def _check_domain(self, t: np.ndarray) -> None:
        a, b = self._domain
        if np.any(~np.isfinite(t)) or np.any(t < a - _DOMAIN_SLACK) or np.any(t > b + _DOMAIN_SLACK):
            bad = t[(t < a - _DOMAIN_SLACK) | (t > b + _DOMAIN_SLACK) | ~np.isfinite(t)]
            raise ParameterDomainError(f"Parameter {bad[0]} outside curve domain [{a}, {b}]")

    def evaluate(self, t: ArrayLike, check: bool = True) -> np.ndarray:
        """gamma(t); shape (2,) for scalar t, (n, 2) for arrays."""
        scalar = np.ndim(t) == 0
        params = np.atleast_1d(np.asarray(t, dtype=float))
        if check:
            self._check_domain(params)
        points = self._position(params)
        return points[0] if scalar else points

    def derivative(self, t: ArrayLike, order: int = 1, check: bool = True) -> np.ndarray:
        """Derivative of gamma with respect to its native parameter."""
        scalar = np.ndim(t) == 0
        params = np.atleast_1d(np.asarray(t, dtype=float))
        if check:
            self._check_domain(params)
        values = self._derivative(params, order)
        return values[0] if scalar else values

    def wrap(self, t: np.ndarray) -> np.ndarray:
        """Map parameters back into the domain: modulo the period, otherwise clamp."""
        a, b = self._domain
        if self.periodic:
            return a + np.mod(np.asarray(t, dtype=float) - a, b - a)
        return np.clip(t, a, b)

    def node_parameters(self, n: int) -> np.ndarray:
        """n equispaced parameters, symmetric about the domain midpoint.

        Periodic curves skip the duplicated endpoint; open curves keep both endpoints.
        """
        if n < 1:
            raise ParameterDomainError(f"Need at least one node, got {n}")
        a, b = self._domain
        mid = 0.5 * (a + b)
        offsets = np.arange(n, dtype=float) - 0.5 * (n - 1)
        if self.periodic:
            return mid + (b - a) / n * offsets
        if n == 1:
            return np.array([mid])
        t = mid + (b - a) / (n - 1) * offsets
        t[0], t[-1] = a, b
        return t

    def sample(self, n: int) -> np.ndarray:
        """Points at node_parameters(n)."""
        return self._position(self.node_parameters(n))

    def frame(self, t: float) -> CurveFrame:
        """Arclength frame at t: unit tangent, unit normal T'/|T'|, curvature.

        Raises:
            DegenerateFrameError: Zero speed, or a curve that is not twice differentiable
        """
        if not self.twice_differentiable:
            raise DegenerateFrameError(f"Frames are not available on {self.kind} curves")
        params = np.atleast_1d(np.asarray(t, dtype=float))
        self._check_domain(params)
        d1 = self._derivative(params, 1)[0]
        d2 = self._derivative(params, 2)[0]
        speed = float(np.hypot(d1[0], d1[1]))
        if speed <= Config.FRAME_TOL:
            raise DegenerateFrameError(f"Zero speed at t = {float(t)}")
        tangent = d1 / speed
        cross = float(d1[0] * d2[1] - d1[1] * d2[0])
        curvature = abs(cross) / speed ** 3
        point = self._position(params)[0]
        if curvature <= Config.ZERO_CURVATURE:
            normal = None
            curvature = 0.0
        else:
            # left turn -> normal is tangent rotated by +90 degrees
            sign = 1.0 if cross > 0 else -1.0
            normal = (float(-sign * tangent[1]), float(sign * tangent[0]))
        return CurveFrame(
            point=PlanePoint(float(point[0]), float(point[1])),
            tangent=(float(tangent[0]), float(tangent[1])),
            normal=normal,
            curvature=float(curvature),
            speed=speed,
        )

    def _validate_half_plane(self) -> None:
        a, b = self._domain
        t = np.concatenate([np.linspace(a, b, 4097), [a, b]])
        min_x = float(self._position(t)[:, 0].min())
        if min_x < -_DOMAIN_SLACK:
            raise GeometryError(f"{self.kind} curve leaves H+ (min x = {min_x})")

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.to_spec()})"


class Circle(GeneratorCurve):
    """Circle (or arc) center + r (cos t, sin t), t in [t_lo, t_hi]."""

    kind = "circle"

    def __init__(self, center: Sequence[float], radius: float,
                 angles: Tuple[float, float] = (-np.pi, np.pi)):
        super().__init__(angles)
        if not radius > 0:
            raise GeometryError(f"Circle radius must be positive, got {radius}")
        if self._domain[1] - self._domain[0] > 2.0 * np.pi + 1e-12:
            raise GeometryError("Circle angle range exceeds one full turn")
        self.center = (float(center[0]), float(center[1]))
        self.radius = float(radius)
        self._validate_half_plane()

    @property
    def periodic(self) -> bool:
        a, b = self._domain
        return abs((b - a) - 2.0 * np.pi) <= 1e-12

    def _position(self, t):
        return np.stack([self.center[0] + self.radius * np.cos(t),
                         self.center[1] + self.radius * np.sin(t)], axis=-1)

    def _derivative(self, t, order):
        if order < 1:
            return self._position(t)
        # derivatives cycle through (-sin, cos), (-cos, -sin), (sin, -cos), (cos, sin)
        phase = t + 0.5 * np.pi * order
        return self.radius * np.stack([np.cos(phase), np.sin(phase)], axis=-1)

    def to_spec(self):
        return {"kind": self.kind, "center": list(self.center), "radius": self.radius,
                "angles": list(self._domain)}


class Ellipse(GeneratorCurve):
    """Ellipse center + (a_e cos t, b_e sin t)."""

    kind = "ellipse"

    def __init__(self, center: Sequence[float], semi_axes: Sequence[float],
                 angles: Tuple[float, float] = (-np.pi, np.pi)):
        super().__init__(angles)
        a_e, b_e = float(semi_axes[0]), float(semi_axes[1])
        if not (a_e > 0 and b_e > 0):
            raise GeometryError(f"Ellipse semi-axes must be positive, got ({a_e}, {b_e})")
        if self._domain[1] - self._domain[0] > 2.0 * np.pi + 1e-12:
            raise GeometryError("Ellipse angle range exceeds one full turn")
        self.center = (float(center[0]), float(center[1]))
        self.semi_axes = (a_e, b_e)
        self._validate_half_plane()

    @property
    def periodic(self) -> bool:
        a, b = self._domain
        return abs((b - a) - 2.0 * np.pi) <= 1e-12

    def _position(self, t):
        a_e, b_e = self.semi_axes
        return np.stack([self.center[0] + a_e * np.cos(t), self.center[1] + b_e * np.sin(t)], axis=-1)

    def _derivative(self, t, order):
        if order < 1:
            return self._position(t)
        a_e, b_e = self.semi_axes
        phase = t + 0.5 * np.pi * order
        return np.stack([a_e * np.cos(phase), b_e * np.sin(phase)], axis=-1)

    def curvature_closed_form(self, t: float) -> float:
        """a_e b_e / (a_e^2 sin^2 t + b_e^2 cos^2 t)^(3/2)."""
        a_e, b_e = self.semi_axes
        return a_e * b_e / (a_e ** 2 * np.sin(t) ** 2 + b_e ** 2 * np.cos(t) ** 2) ** 1.5

    def to_spec(self):
        return {"kind": self.kind, "center": list(self.center), "semi_axes": list(self.semi_axes),
                "angles": list(self._domain)}


class VerticalSegment(GeneratorCurve):
    """Segment gamma(t) = R + i t, t in [c, d]."""

    kind = "vertical_segment"

    def __init__(self, abscissa: float, y_range: Tuple[float, float]):
        super().__init__(y_range)
        if not abscissa > 0:
            raise GeometryError(f"Segment abscissa must be positive, got {abscissa}")
        self.abscissa = float(abscissa)

    def _position(self, t):
        return np.stack([np.full_like(t, self.abscissa), t], axis=-1)

    def _derivative(self, t, order):
        if order < 1:
            return self._position(t)
        column = np.ones_like(t) if order == 1 else np.zeros_like(t)
        return np.stack([np.zeros_like(t), column], axis=-1)

    def to_spec(self):
        return {"kind": self.kind, "abscissa": self.abscissa, "range": list(self._domain)}


class Polyline(GeneratorCurve):
    """Piecewise-linear curve through vertices; parameter k in [0, m-1] hits vertex k.

    Only evaluation, first derivatives and rightmost extraction are supported.
    """

    kind = "polyline"
    twice_differentiable = False

    def __init__(self, vertices: Sequence[Sequence[float]]):
        verts = np.asarray(vertices, dtype=float).reshape(-1, 2)
        if verts.shape[0] < 2:
            raise GeometryError("A polyline needs at least two vertices")
        super().__init__((0.0, float(verts.shape[0] - 1)))
        self.vertices = verts
        self._validate_half_plane()

    def _segment(self, t):
        index = np.clip(np.floor(t).astype(int), 0, self.vertices.shape[0] - 2)
        return index, t - index

    def _position(self, t):
        index, frac = self._segment(t)
        start, end = self.vertices[index], self.vertices[index + 1]
        return start + frac[:, None] * (end - start)

    def _derivative(self, t, order):
        if order < 1:
            return self._position(t)
        if order > 1:
            raise DegenerateFrameError("Polylines are not twice differentiable")
        index, _ = self._segment(t)
        return self.vertices[index + 1] - self.vertices[index]

    def to_spec(self):
        return {"kind": self.kind, "vertices": self.vertices.tolist()}


def curve_eval(curve: GeneratorCurve, t: float) -> PlanePoint:
    """gamma(t) as a PlanePoint.

    Raises:
        ParameterDomainError: If t lies outside [a, b]
    """
    x, y = curve.evaluate(float(t))
    return PlanePoint(float(x), float(y))


def curve_frame(curve: GeneratorCurve, t: float) -> CurveFrame:
    """Arclength frame (tangent, normal, curvature) of the curve at t."""
    return curve.frame(float(t))


def curve_to_spec(curve: GeneratorCurve) -> Dict[str, Any]:
    """Curve-spec document of a curve; inverse of curve_from_spec."""
    return curve.to_spec()


def curve_from_spec(spec: Dict[str, Any]) -> GeneratorCurve:
    """Build a curve from its curve-spec document.

    Raises:
        GeometryError: Unknown kind or missing fields
    """
    try:
        kind = spec["kind"]
        if kind == "circle":
            return Circle(spec["center"], spec["radius"], tuple(spec.get("angles", (-np.pi, np.pi))))
        if kind == "ellipse":
            return Ellipse(spec["center"], spec["semi_axes"], tuple(spec.get("angles", (-np.pi, np.pi))))
        if kind == "vertical_segment":
            return VerticalSegment(spec["abscissa"], tuple(spec["range"]))
        if kind == "polyline":
            return Polyline(spec["vertices"])
    except (KeyError, TypeError, IndexError) as e:
        raise GeometryError(f"Malformed curve spec {spec!r}: {e}")
    raise GeometryError(f"Unknown curve kind {spec.get('kind')!r}")


def concatenated_nodes(curves: List[GeneratorCurve], n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and parameters of several curves, n per curve, in curve order."""
    params = [curve.node_parameters(n) for curve in curves]
    points = [curve.evaluate(p) for curve, p in zip(curves, params)]
    return np.concatenate(points, axis=0), np.concatenate(params)
