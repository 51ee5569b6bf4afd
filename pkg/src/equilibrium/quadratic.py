"""
Quadratic energy, potentials and equilibrium conditions of discrete measures.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np

from ..core.config import Config
from ..core.exceptions import ConfigurationError, ValidationError
from ..core.models import (
    TWO_PI, DiscreteMeasure, FrostmanReport, KernelSpec, LiftedMeasure, PlanePoint, PotentialField,
)
from ..geometry.points import lift_arrays
from ..kernels.matrix import kernel_matrix, planar_values
from ..kernels.three_d import distance_matrix

PointsLike = Union[Sequence[PlanePoint], np.ndarray]


def _planar(spec: KernelSpec) -> None:
    if not spec.is_planar:
        raise ConfigurationError(f"Measures on the half-plane need a planar kernel, got {spec.label}")


def points_array(points: PointsLike) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=float).reshape(-1, 2)
    return np.array([[p.x, p.y] for p in points], dtype=float).reshape(-1, 2)


def quadratic_energy(m: DiscreteMeasure, spec: KernelSpec) -> float:
    """J(m) = sum_i sum_j w_i w_j k(z_i, z_j), diagonal terms included.

    Raises:
        SingularEvaluationError: Axis node under K
    """
    _planar(spec)
    matrix = kernel_matrix(spec, m.nodes)
    return math.fsum(m.weights * (matrix @ m.weights))


def potential(m: DiscreteMeasure, spec: KernelSpec, z: PlanePoint) -> float:
    """W(z) = sum_j w_j k(z, z_j)."""
    _planar(spec)
    values = planar_values(spec, z.x, z.y, m.nodes[:, 0], m.nodes[:, 1])
    return math.fsum(m.weights * values)


def potential_field(m: DiscreteMeasure, spec: KernelSpec, points: PointsLike) -> PotentialField:
    """Potentials of m at many evaluation points."""
    _planar(spec)
    evaluation = points_array(points)
    values = kernel_matrix(spec, evaluation, m.nodes) @ m.weights
    return PotentialField(points=evaluation, values=values, kernel=spec)


def frostman_check(m: DiscreteMeasure, spec: KernelSpec, candidates: Optional[PointsLike] = None,
                   tol: float = Config.EQ_TOL, threshold: Optional[float] = None) -> FrostmanReport:
    """Equilibrium residuals: W = J on the support and W >= J on the candidate set.

    Args:
        m: Measure to check
        spec: Planar kernel
        candidates: Points of A to test (the measure's nodes when None)
        tol: Allowed residual
        threshold: Active-weight threshold (Config.SUPPORT_THRESHOLD_SCALE / n when None)
    """
    _planar(spec)
    if threshold is None:
        threshold = Config.SUPPORT_THRESHOLD_SCALE / m.n
    J = quadratic_energy(m, spec)
    node_potentials = kernel_matrix(spec, m.nodes) @ m.weights
    active = m.active_mask(threshold)
    max_violation = float(np.max(np.abs(node_potentials[active] - J))) if np.any(active) else math.inf
    if candidates is None:
        candidate_potentials = node_potentials
    else:
        candidate_potentials = potential_field(m, spec, candidates).values
    min_slack = float(np.min(candidate_potentials - J))
    return FrostmanReport(J=J, max_violation=max_violation, min_slack=min_slack, tol=tol)


def lift_measure(m: DiscreteMeasure, samples: int) -> LiftedMeasure:
    """Rotationally symmetric lift: each node at angles 2 pi k / M with weight w_j / M.

    Raises:
        ValidationError: If samples < 1
        ParameterDomainError: Node left of the rotation axis
    """
    if samples < 1:
        raise ValidationError(f"Need at least one rotation angle, got {samples}")
    phi = TWO_PI * np.arange(samples) / samples
    x = np.repeat(m.nodes[:, 0], samples)
    y = np.repeat(m.nodes[:, 1], samples)
    points = lift_arrays(x, y, np.tile(phi, m.n))
    weights = np.repeat(m.weights / samples, samples)
    return LiftedMeasure(points=points, weights=weights)


def lifted_energy(lifted: LiftedMeasure) -> float:
    """3D logarithmic energy of a lifted measure over pairs of distinct points."""
    distances = distance_matrix(lifted.points, lifted.points)
    distinct = distances > 0.0
    logs = np.zeros_like(distances)
    logs[distinct] = -np.log(distances[distinct])
    return math.fsum(lifted.weights * (logs @ lifted.weights))
