"""
Discrete N-point energies and their parameter gradients.
"""

import math
from typing import Tuple

import numpy as np

from ..core.exceptions import ConfigurationError, NonDifferentiableError
from ..core.models import Configuration, ConfigurationMode, DiscreteMeasure, KernelSpec
from ..geometry.curves import Circle
from ..kernels.matrix import kernel_diagonal, kernel_matrix, pair_gradients
from ..kernels.three_d import pair_distances, values_from_distance


def mode_for_kernel(spec: KernelSpec) -> ConfigurationMode:
    """3D kernels act on revolved surfaces, planar kernels on the generator curve."""
    return ConfigurationMode.SURFACE_3D if spec.is_spatial else ConfigurationMode.CURVE_1D


def _check_mode(config: Configuration, spec: KernelSpec) -> None:
    if config.mode is not mode_for_kernel(spec):
        raise ConfigurationError(f"Kernel {spec.label} cannot act on a {config.mode.value} configuration")


def pair_energy_terms(config: Configuration, spec: KernelSpec) -> Tuple[float, np.ndarray]:
    """Energy sum over ordered pairs i != j and the per-point row sums."""
    _check_mode(config, spec)
    matrix = kernel_matrix(spec, config.points(), exclude_diagonal=True)
    energy = math.fsum(matrix.ravel().tolist())
    potentials = np.array([math.fsum(row) for row in matrix])
    return energy, potentials


def pair_energy(config: Configuration, spec: KernelSpec) -> float:
    """E_k(omega_N) = sum over i != j of k(x_i, x_j); each unordered pair counts twice.

    Raises:
        ConfigurationError: Kernel and configuration mode do not match
        SingularEvaluationError: Coincident points under a singular kernel
    """
    _check_mode(config, spec)
    if spec.is_spatial:
        # symmetric: twice the compensated sum over i < j
        values = values_from_distance(spec, pair_distances(config.points()))
        return 2.0 * math.fsum(values.tolist())
    matrix = kernel_matrix(spec, config.points(), exclude_diagonal=True)
    return math.fsum(matrix.ravel().tolist())


def coincident_pairs(config: Configuration):
    """Index pairs i < j of configuration points that coincide."""
    zero = np.flatnonzero(pair_distances(config.space_points()) == 0.0)
    if zero.size == 0:
        return []
    i, j = np.triu_indices(config.N, k=1)
    return list(zip(i[zero].tolist(), j[zero].tolist()))


def energy_gradient(config: Configuration, spec: KernelSpec) -> np.ndarray:
    """Gradient of pair_energy in the free parameters.

    Returns dE/dt_i for curve configurations and the concatenation
    [dE/dt_1..N, dE/dphi_1..N] on surfaces. Kinks of |z - w| at coincident planar points
    use the zero subgradient.

    Raises:
        NonDifferentiableError: Coincident points under a 3D kernel
    """
    _check_mode(config, spec)
    if spec.is_spatial:
        pairs = coincident_pairs(config)
        if pairs:
            raise NonDifferentiableError(f"{len(pairs)} coincident point pairs, first at {pairs[0]}", pairs)

    forces = 2.0 * pair_gradients(spec, config.points()).sum(axis=1)
    tangent = config.curve.derivative(config.t, order=1)

    if config.mode is ConfigurationMode.CURVE_1D:
        return np.einsum("ij,ij->i", forces, tangent)

    plane = config.plane_points()
    c, s = np.cos(config.phi), np.sin(config.phi)
    dp_dt = np.stack([tangent[:, 0] * c, tangent[:, 1], tangent[:, 0] * s], axis=-1)
    dp_dphi = np.stack([-plane[:, 0] * s, np.zeros_like(s), plane[:, 0] * c], axis=-1)
    return np.concatenate([np.einsum("ij,ij->i", forces, dp_dt), np.einsum("ij,ij->i", forces, dp_dphi)])


def counting_measure(config: Configuration) -> DiscreteMeasure:
    """Uniform weights 1/N on the generator points of a configuration."""
    n = config.N
    return DiscreteMeasure(
        nodes=config.plane_points(),
        weights=np.full(n, 1.0 / n),
        params=config.t,
        angular=isinstance(config.curve, Circle),
    )


def counting_energy(config: Configuration, spec: KernelSpec) -> float:
    """Energy of the counting measure: (E_k + sum of k(x_i, x_i)) / N^2, planar kernels only."""
    energy = pair_energy(config, spec)
    diagonal = kernel_diagonal(spec, config.plane_points())
    return (energy + math.fsum(diagonal)) / config.N ** 2
