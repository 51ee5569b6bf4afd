"""
Asymptotic checks: convergence of K_R to K_inf and the discrete/continuous energy sandwich.
"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from ..core.config import Config
from ..core.exceptions import ConfigurationError, ValidationError
from ..core.models import (
    CheckReport, EquilibriumOptions, KernelSpec, KernelVariant, SolverOptions,
)
from ..energy.optimizer import optimize_config
from ..energy.pair_energy import counting_energy
from ..equilibrium.solver import solve_on_curve
from ..geometry.curves import Circle, GeneratorCurve
from ..kernels.matrix import kernel_diagonal
from ..kernels.planar import k_inf_values, scaled_kr_values
from ..utils.logging_utils import get_logger

logger = get_logger(__name__)

RATE_BAND = (0.8, 1.2)
CONSTANT_SPREAD = 2.0
WEAK_STAR_CIRCLE = Circle((3.0, 0.0), 1.0)
WEAK_STAR_NODES = 201


def default_limit_grid() -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """x, u in [0, 2] and y, v in [-1, 1], 9 values each, as flattened coordinate arrays."""
    xs = np.linspace(0.0, 2.0, 9)
    ys = np.linspace(-1.0, 1.0, 9)
    x, y, u, v = np.meshgrid(xs, ys, xs, ys, indexing="ij")
    return x.ravel(), y.ravel(), u.ravel(), v.ravel()


def kr_limit_errors(radii: Sequence[float], grid=None) -> np.ndarray:
    """Sup-norm distance between K_R and K_inf over the grid, per radius."""
    x, y, u, v = default_limit_grid() if grid is None else grid
    limit = k_inf_values(x, y, u, v)
    return np.array([float(np.max(np.abs(scaled_kr_values(x, y, u, v, R) - limit))) for R in radii])


def weak_star_distances(radii: Sequence[float], curve: GeneratorCurve = WEAK_STAR_CIRCLE,
                        n_nodes: int = WEAK_STAR_NODES,
                        options: Optional[EquilibriumOptions] = None) -> np.ndarray:
    """Total-variation distance between K_R- and K_inf-equilibrium weights on one node set."""
    limit, _ = solve_on_curve(curve, KernelSpec(KernelVariant.LIMIT_KINF), n_nodes, options=options)
    distances = []
    for R in radii:
        measure, _ = solve_on_curve(curve, KernelSpec(KernelVariant.SCALED_KR, R=float(R)), n_nodes, options=options)
        distances.append(0.5 * float(np.abs(measure.weights - limit.weights).sum()))
    return np.array(distances)


def check_kr_limit(grid=None, radii: Sequence[float] = Config.KR_LIMIT_RADII, weak_star: bool = True,
                   weak_star_radii: Sequence[float] = Config.KR_WEAK_STAR_RADII,
                   options: Optional[EquilibriumOptions] = None) -> CheckReport:
    """Uniform convergence K_R -> K_inf at rate 1/R, and weak-star convergence of the equilibria.

    The error e(R) must shrink by R_i / R_(i+1) within RATE_BAND between consecutive radii
    and R e(R) must stay within a factor CONSTANT_SPREAD across the list.

    Raises:
        ValidationError: Fewer than two radii or radii not increasing
    """
    radii = [float(R) for R in radii]
    if len(radii) < 2 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValidationError(f"Need at least two increasing radii, got {radii}")

    errors = kr_limit_errors(radii, grid)
    margins = {}
    details = []
    ratio_margin = math.inf
    for (r0, e0), (r1, e1) in zip(zip(radii, errors), zip(radii[1:], errors[1:])):
        expected = r0 / r1
        ratio = e1 / e0 if e0 > 0 else math.inf
        ratio_margin = min(ratio_margin, ratio - RATE_BAND[0] * expected, RATE_BAND[1] * expected - ratio)
        details.append({"R": r1, "error": float(e1), "ratio": float(ratio), "expected": expected})
    margins["rate"] = ratio_margin
    constants = errors * np.array(radii)
    margins["constant"] = CONSTANT_SPREAD - float(constants.max() / constants.min())

    notes = f"e(R) = {errors.tolist()}, R e(R) = {constants.tolist()}"
    if weak_star:
        ws_radii = [float(R) for R in weak_star_radii]
        tv = weak_star_distances(ws_radii, options=options)
        margins["weak_star"] = float(np.min(tv[:-1] - tv[1:])) if tv.size > 1 else 0.0
        details.extend({"R": R, "tv_distance": float(d)} for R, d in zip(ws_radii, tv))
        notes += f"; TV distance to the limit equilibrium {tv.tolist()}"

    return CheckReport(
        name="kr-limit",
        instance=f"R in {radii}",
        margin=float(min(margins.values())),
        resolution=f"{errors.size} radii on a 9^4 grid" if grid is None else f"{errors.size} radii on a custom grid",
        guaranteed=True,
        details=details,
        notes=notes,
    )


def check_sandwich(curve: GeneratorCurve, spec: KernelSpec, N_list: Sequence[int] = (10, 50, 100),
                   seed: int = 42, n_nodes: int = Config.EQ_NODES, opts: Optional[SolverOptions] = None,
                   options: Optional[EquilibriumOptions] = None) -> CheckReport:
    """E/(N(N-1)) <= J and J <= E/N^2 + |k|_A/N for optimized N-point energies E.

    J is the discrete equilibrium energy; the slack is SANDWICH_SLACK plus the drift of J
    under node refinement. Also checks that the counting-measure energy approaches J, the
    gap I(lambda_N) - J being nonincreasing in N within the slack.

    Raises:
        ConfigurationError: Singular or 3D kernel
    """
    if spec.variant not in (KernelVariant.REDUCED_K, KernelVariant.SCALED_KR, KernelVariant.LIMIT_KINF):
        raise ConfigurationError(f"The sandwich needs a continuous half-plane kernel, got {spec.label}")

    _, eq_report = solve_on_curve(curve, spec, n_nodes, refine=2, options=options)
    J = eq_report.J
    slack = Config.SANDWICH_SLACK + (eq_report.refinement_drift or 0.0)
    diagonal_sup = float(kernel_diagonal(spec, curve.sample(n_nodes)).max())

    lower = upper = math.inf
    gaps = []
    details = []
    for N in N_list:
        config, report = optimize_config(curve, spec, N, seed, opts)
        E = report.energy
        lower_gap = J + slack - E / (N * (N - 1))
        upper_gap = E / N ** 2 + diagonal_sup / N + slack - J
        counting_gap = counting_energy(config, spec) - J
        lower, upper = min(lower, lower_gap), min(upper, upper_gap)
        gaps.append(counting_gap)
        details.append({"N": N, "E": E, "lower_margin": lower_gap, "upper_margin": upper_gap,
                        "counting_gap": counting_gap, "converged": report.converged})

    rate = min((g0 + slack - g1 for g0, g1 in zip(gaps, gaps[1:])), default=0.0)
    fitted = max(N * g for N, g in zip(N_list, gaps))
    return CheckReport(
        name="sandwich",
        instance=f"{curve.kind} / {spec.label}, N in {list(N_list)}",
        margin=float(min(lower, upper, rate)),
        resolution=f"{n_nodes} equilibrium nodes (refined x2), seed {seed}",
        guaranteed=True,
        details=details,
        notes=f"J = {J!r}, slack = {slack:.3e}, sup k(z, z) = {diagonal_sup!r}, fitted C = {fitted:.6g}",
    )
