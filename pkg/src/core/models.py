"""
Data models and type definitions for revolve.
Provides structured data types for points, kernels, configurations, measures and reports.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple

import numpy as np

from .config import Config
from .exceptions import ConfigurationError, ParameterDomainError, ValidationError

if TYPE_CHECKING:
    from ..geometry.curves import GeneratorCurve

TWO_PI = 2.0 * np.pi


def _frozen_array(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class PlanePoint:
    """A point z = x + iy of the half-plane; x is the distance from the rotation axis."""
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValidationError(f"PlanePoint coordinates must be finite, got ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class SpacePoint:
    """Cartesian point (x, y, zeta) in 3-space; y is the rotation axis."""
    x: float
    y: float
    zeta: float

    def __post_init__(self):
        if not all(np.isfinite(v) for v in (self.x, self.y, self.zeta)):
            raise ValidationError("SpacePoint coordinates must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.zeta], dtype=float)


@dataclass(frozen=True)
class CurveFrame:
    """Arclength frame of a generator curve at one parameter.

    normal is None on straight pieces (zero curvature).
    """
    point: PlanePoint
    tangent: Tuple[float, float]
    normal: Optional[Tuple[float, float]]
    curvature: float
    speed: float

    @property
    def has_normal(self) -> bool:
        return self.normal is not None


@dataclass
class RightmostSet:
    """Per-height maxima of a finite point set.

    samples holds (y, x_A(y)) per height bin; indices point into the input sequence
    and name every kept point (ties included).
    """
    samples: List[Tuple[float, float]]
    points: List[PlanePoint]
    indices: List[int]
    y_tolerance: float

    def x_at(self, y: float) -> Optional[float]:
        """x_A(y) of the bin containing y, or None if y is not covered."""
        for y_bin, x_max in self.samples:
            if abs(y_bin - y) <= self.y_tolerance:
                return x_max
        return None

    def __len__(self) -> int:
        return len(self.points)


class KernelVariant(str, Enum):
    """Interaction kernels known to the library."""
    RIESZ_3D = "riesz"
    LOG_3D = "log3d"
    REDUCED_K = "K"
    SCALED_KR = "KR"
    LIMIT_KINF = "Kinf"
    SYMMETRIZED_KINF = "Kinf-sym"


@dataclass(frozen=True)
class KernelSpec:
    """Which interaction kernel is in force.

    s is the Riesz exponent (Riesz3D only), R the shift of ScaledKR, axis_y the line
    of conjugation used by the symmetrized limit kernel.
    """
    variant: KernelVariant
    s: Optional[float] = None
    R: Optional[float] = None
    axis_y: float = 0.0

    def __post_init__(self):
        if self.variant is KernelVariant.RIESZ_3D:
            if self.s is None or not self.s > 0:
                raise ConfigurationError(f"Riesz kernel needs s > 0, got {self.s}")
        if self.variant is KernelVariant.SCALED_KR:
            if self.R is None or not self.R > 0:
                raise ConfigurationError(f"Scaled kernel needs R > 0, got {self.R}")

    @classmethod
    def from_string(cls, text: str) -> "KernelSpec":
        """Parse a CLI kernel string: riesz:<s>, log3d, K, KR:<R>, Kinf, Kinf-sym[:<y>]."""
        raw = text.strip()
        name, _, argument = raw.partition(":")
        try:
            if name.lower() == "riesz":
                return cls(KernelVariant.RIESZ_3D, s=float(argument))
            if name.lower() == "log3d" and not argument:
                return cls(KernelVariant.LOG_3D)
            if name == "K" and not argument:
                return cls(KernelVariant.REDUCED_K)
            if name == "KR":
                return cls(KernelVariant.SCALED_KR, R=float(argument))
            if name == "Kinf" and not argument:
                return cls(KernelVariant.LIMIT_KINF)
            if name == "Kinf-sym":
                return cls(KernelVariant.SYMMETRIZED_KINF, axis_y=float(argument) if argument else 0.0)
        except ValueError:
            raise ConfigurationError(f"Malformed kernel string: {text!r}")
        raise ConfigurationError(f"Unknown kernel string: {text!r}")

    @property
    def label(self) -> str:
        if self.variant is KernelVariant.RIESZ_3D:
            return f"riesz:{self.s!r}"
        if self.variant is KernelVariant.SCALED_KR:
            return f"KR:{self.R!r}"
        if self.variant is KernelVariant.SYMMETRIZED_KINF and self.axis_y != 0.0:
            return f"Kinf-sym:{self.axis_y!r}"
        return self.variant.value

    @property
    def is_spatial(self) -> bool:
        return self.variant in (KernelVariant.RIESZ_3D, KernelVariant.LOG_3D)

    @property
    def is_planar(self) -> bool:
        return not self.is_spatial


class ConfigurationMode(str, Enum):
    """Where configuration points live."""
    SURFACE_3D = "surface3d"
    CURVE_1D = "curve1d"


class StopReason(str, Enum):
    """Why a descent run ended."""
    GRADIENT = "gradient"
    STALLED = "stalled"
    MAX_ITER = "max_iter"


@dataclass(eq=False)
class Configuration:
    """An N-point set, stored as curve parameters (and rotation angles on the surface)."""
    curve: "GeneratorCurve"
    t: np.ndarray
    phi: Optional[np.ndarray] = None
    mode: ConfigurationMode = ConfigurationMode.CURVE_1D

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).ravel()
        if t.size < 2:
            raise ValidationError(f"A configuration needs N >= 2 points, got {t.size}")
        lo, hi = self.curve.domain
        if np.any(t < lo - 1e-12) or np.any(t > hi + 1e-12):
            raise ParameterDomainError(f"Configuration parameters leave the curve domain [{lo}, {hi}]")
        self.t = _frozen_array(np.clip(t, lo, hi))
        if self.mode is ConfigurationMode.SURFACE_3D:
            if self.phi is None:
                raise ValidationError("Surface configurations need rotation angles")
            phi = np.asarray(self.phi, dtype=float).ravel()
            if phi.shape != t.shape:
                raise ValidationError("t and phi must have the same length")
            self.phi = _frozen_array(np.mod(phi, TWO_PI))
        else:
            self.phi = None

    @property
    def N(self) -> int:
        return int(self.t.size)

    def plane_points(self) -> np.ndarray:
        """Generator-plane points gamma(t_i) as an (N, 2) array."""
        return self.curve.evaluate(self.t)

    def space_points(self) -> np.ndarray:
        """Lifted points as an (N, 3) array (generator points at phi = 0 for curve mode)."""
        from ..geometry.points import lift_arrays
        plane = self.plane_points()
        phi = self.phi if self.phi is not None else np.zeros(self.N)
        return lift_arrays(plane[:, 0], plane[:, 1], phi)

    def points(self) -> np.ndarray:
        """The points the kernel acts on: 3D for surface mode, planar otherwise."""
        if self.mode is ConfigurationMode.SURFACE_3D:
            return self.space_points()
        return self.plane_points()

    def with_params(self, t: np.ndarray, phi: Optional[np.ndarray] = None) -> "Configuration":
        return Configuration(self.curve, t, phi if phi is not None else self.phi, self.mode)


@dataclass(frozen=True)
class SolverOptions:
    """Options of the projected-gradient configuration optimizer."""
    restarts: int = Config.OPT_RESTARTS
    grad_tol: float = Config.OPT_GRAD_TOL
    max_iter: int = Config.OPT_MAX_ITER
    shrink: float = Config.ARMIJO_SHRINK
    slope: float = Config.ARMIJO_SLOPE
    max_step: float = Config.MAX_STEP
    stall_window: int = Config.OPT_STALL_WINDOW
    stall_ulps: float = Config.OPT_STALL_ULPS
    stall_tol: float = Config.OPT_STALL_TOL

    def __post_init__(self):
        if self.restarts < 1 or self.max_iter < 1:
            raise ConfigurationError("restarts and max_iter must be positive")
        if not 0.0 < self.shrink < 1.0 or not 0.0 < self.slope < 1.0:
            raise ConfigurationError("Armijo shrink and slope factors must lie in (0, 1)")
        if self.stall_window < 1 or self.stall_ulps <= 0.0:
            raise ConfigurationError("stall_window and stall_ulps must be positive")


@dataclass
class EnergyReport:
    """Outcome of a configuration optimization."""
    energy: float
    potentials: List[float]
    gradient_norm: float
    iterations: int
    seed: int
    converged: bool
    kernel: str
    restart_energies: List[float] = field(default_factory=list)
    history: List[float] = field(default_factory=list)
    stop_reason: str = StopReason.MAX_ITER.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "energy": self.energy,
            "potentials": list(self.potentials),
            "gradient_norm": self.gradient_norm,
            "iterations": self.iterations,
            "seed": self.seed,
            "converged": self.converged,
            "kernel": self.kernel,
            "restart_energies": list(self.restart_energies),
            "history_length": len(self.history),
            "stop_reason": self.stop_reason,
        }


@dataclass(eq=False)
class DiscreteMeasure:
    """Nodes in the half-plane with nonnegative weights summing to one.

    params are the originating curve parameters; angular marks them as circle angles
    measured from the outermost point of the circle.
    """
    nodes: np.ndarray
    weights: np.ndarray
    params: Optional[np.ndarray] = None
    angular: bool = False

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float).reshape(-1, 2)
        weights = np.asarray(self.weights, dtype=float).ravel()
        if nodes.shape[0] == 0:
            raise ValidationError("A measure needs at least one node")
        if weights.shape[0] != nodes.shape[0]:
            raise ValidationError("nodes and weights must have equal length")
        if np.any(weights < -1e-12):
            raise ValidationError(f"Negative weight {weights.min()}")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValidationError(f"Weights sum to {weights.sum()!r}, expected 1")
        self.nodes = _frozen_array(nodes)
        self.weights = _frozen_array(np.maximum(weights, 0.0))
        if self.params is not None:
            params = np.asarray(self.params, dtype=float).ravel()
            if params.shape != weights.shape:
                raise ValidationError("params and weights must have equal length")
            self.params = _frozen_array(params)

    @property
    def n(self) -> int:
        return int(self.weights.size)

    def plane_points(self) -> List[PlanePoint]:
        return [PlanePoint(float(x), float(y)) for x, y in self.nodes]

    def active_mask(self, threshold: float) -> np.ndarray:
        return self.weights > threshold


@dataclass(eq=False)
class LiftedMeasure:
    """Rotationally symmetric lift of a measure: 3D points with weights."""
    points: np.ndarray
    weights: np.ndarray


@dataclass(eq=False)
class PotentialField:
    """Potential values of a measure at evaluation points."""
    points: np.ndarray
    values: np.ndarray
    kernel: KernelSpec


@dataclass
class SupportEstimate:
    """Thresholded support of a discrete measure."""
    active_indices: List[int]
    interval: Tuple[float, float]
    threshold: float
    active_mass: float
    contiguous: bool
    two_point_degenerate: bool
    theta: Optional[float] = None
    theta_m: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "active_count": len(self.active_indices),
            "interval": [self.interval[0], self.interval[1]],
            "threshold": self.threshold,
            "active_mass": self.active_mass,
            "contiguous": self.contiguous,
            "two_point_degenerate": self.two_point_degenerate,
            "theta": self.theta,
            "theta_m": self.theta_m,
        }


@dataclass(frozen=True)
class EquilibriumOptions:
    """Options of the simplex-constrained equilibrium solver."""
    tol: float = Config.EQ_TOL
    max_iter: int = Config.EQ_MAX_ITER
    polish: bool = True

    def __post_init__(self):
        if not self.tol > 0 or self.max_iter < 1:
            raise ConfigurationError("tol must be positive and max_iter at least 1")


@dataclass
class EquilibriumReport:
    """Outcome of an equilibrium solve."""
    J: float
    wolfe_gap: float
    frostman_violation: float
    frostman_slack: float
    iterations: int
    converged: bool
    kernel: str
    n_nodes: int
    polish_rounds: int = 0
    refinement_drift: Optional[float] = None
    history: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "J": self.J,
            "wolfe_gap": self.wolfe_gap,
            "frostman_violation": self.frostman_violation,
            "frostman_slack": self.frostman_slack,
            "iterations": self.iterations,
            "converged": self.converged,
            "kernel": self.kernel,
            "n_nodes": self.n_nodes,
            "polish_rounds": self.polish_rounds,
            "refinement_drift": self.refinement_drift,
        }


@dataclass
class FrostmanReport:
    """Equilibrium-condition residuals of a measure."""
    J: float
    max_violation: float
    min_slack: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol and self.min_slack >= -self.tol


@dataclass
class CheckReport:
    """Result of one executable theorem check.

    Margins are oriented so that positive means satisfied; passed is derived from the
    margin. guaranteed=False marks exploratory instances without a pass requirement.
    """
    name: str
    instance: str
    margin: float
    resolution: str
    guaranteed: bool = True
    details: List[Dict[str, Any]] = field(default_factory=list)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.margin >= 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "instance": self.instance,
            "pass": self.passed,
            "margin": self.margin,
            "resolution": self.resolution,
            "guaranteed": self.guaranteed,
            "details": self.details,
            "notes": self.notes,
        }


@dataclass
class RunManifest:
    """Everything needed to re-run a CLI computation."""
    command: List[str]
    curve_spec: Dict[str, Any]
    kernel: str
    size: int
    seed: Optional[int]
    version: str
    started_at: str
    finished_at: str = ""
    options: Dict[str, Any] = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": list(self.command),
            "curve_spec": self.curve_spec,
            "kernel": self.kernel,
            "size": self.size,
            "seed": self.seed,
            "version": self.version,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "options": self.options,
            "outputs": self.outputs,
        }
