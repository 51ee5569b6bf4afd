"""
Equilibrium measures on node sets.
Away-step Frank-Wolfe over the probability simplex, a projected-gradient polish on the
active face and an exact solve of the face optimality system.
"""

import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import Config
from ..core.exceptions import ConfigurationError, ParameterDomainError, ValidationError
from ..core.models import DiscreteMeasure, EquilibriumOptions, EquilibriumReport, KernelSpec, PlanePoint
from ..geometry.curves import Circle, GeneratorCurve, concatenated_nodes
from ..kernels.matrix import kernel_matrix
from ..utils.logging_utils import get_logger, log_stage
from .quadratic import points_array, frostman_check

NodesLike = Union[Sequence[PlanePoint], np.ndarray]


def project_onto_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    cumulative = np.cumsum(u) - 1.0
    index = np.arange(1, v.size + 1)
    rho = int(np.flatnonzero(u - cumulative / index > 0.0)[-1])
    return np.maximum(v - cumulative[rho] / (rho + 1), 0.0)


def wolfe_gap(matrix: np.ndarray, weights: np.ndarray) -> float:
    """Frank-Wolfe gap g.w - min g of the quadratic form at weights, g = 2 M w."""
    gradient = 2.0 * (matrix @ weights)
    return float(np.dot(gradient, weights) - gradient.min())


class EquilibriumSolver:
    """Minimizer of w^T M w over the probability simplex for a planar kernel matrix M."""

    def __init__(self, spec: KernelSpec, options: Optional[EquilibriumOptions] = None):
        if not spec.is_planar:
            raise ConfigurationError(f"Equilibrium problems need a planar kernel, got {spec.label}")
        self.spec = spec
        self.options = options or EquilibriumOptions()
        self.logger = get_logger(self.__class__.__name__)

    def frank_wolfe(self, matrix: np.ndarray) -> Tuple[np.ndarray, float, int, List[float]]:
        """Away-step Frank-Wolfe with exact line search from the uniform measure.

        Returns:
            Tuple: weights, final gap, iterations, objective history
        """
        n = matrix.shape[0]
        w = np.full(n, 1.0 / n)
        mw = matrix @ w
        history = [float(np.dot(w, mw))]
        gap = math.inf
        iterations = 0

        while iterations < self.options.max_iter:
            g = 2.0 * mw
            gw = float(np.dot(g, w))
            toward = int(np.argmin(g))
            gap = gw - float(g[toward])
            if gap <= self.options.tol:
                break

            active = np.flatnonzero(w > 0.0)
            away = int(active[np.argmax(g[active])])
            away_gap = float(g[away]) - gw

            if gap >= away_gap:
                md = matrix[:, toward] - mw
                curvature = float(md[toward] - np.dot(w, md))
                slope = -gap
                max_step = 1.0
            else:
                md = mw - matrix[:, away]
                curvature = float(np.dot(w, md) - md[away])
                slope = -away_gap
                max_step = w[away] / (1.0 - w[away])

            step = max_step if curvature <= 0.0 else min(-slope / (2.0 * curvature), max_step)
            if gap >= away_gap:
                w *= 1.0 - step
                w[toward] += step
            else:
                w *= 1.0 + step
                w[away] -= step
                if step == max_step:
                    w[away] = 0.0
            np.maximum(w, 0.0, out=w)
            mw += step * md

            iterations += 1
            if iterations % 1000 == 0:
                w /= w.sum()
                mw = matrix @ w
            history.append(float(np.dot(w, mw)))

        w /= w.sum()
        return w, gap, iterations, history

    def polish(self, matrix: np.ndarray, weights: np.ndarray) -> Tuple[np.ndarray, int, List[float]]:
        """Projected gradient on the face of the simplex spanned by the active nodes.

        Trial points w - alpha g are projected back onto the face and the step along the
        projected direction is the exact minimizer of the quadratic. alpha starts at 1/L
        and follows the Barzilai-Borwein rule. Inactive nodes keep zero weight.

        Returns:
            Tuple: weights, rounds used, objective history
        """
        support = np.flatnonzero(weights > 0.0)
        face = matrix[np.ix_(support, support)]
        v = weights[support] / weights[support].sum()
        mv = face @ v
        history: List[float] = []
        alpha = 1.0 / max(2.0 * float(np.abs(face).sum(axis=1).max()), 1e-300)
        rounds = 0

        while rounds < Config.POLISH_MAX_ROUNDS:
            g = 2.0 * mv
            if float(np.dot(g, v) - g.min()) <= 0.1 * self.options.tol:
                break
            direction = project_onto_simplex(v - alpha * g) - v
            slope = float(np.dot(g, direction))
            if slope >= 0.0:
                break
            md = face @ direction
            curvature = float(np.dot(direction, md))
            step = 1.0 if curvature <= 0.0 else min(1.0, -slope / (2.0 * curvature))
            rounds += 1
            v = np.maximum(v + step * direction, 0.0)
            v /= v.sum()
            mv = face @ v
            history.append(float(np.dot(v, mv)))
            # BB: s = step d, y = 2 M s
            sy = 2.0 * step * step * curvature
            if sy > 0.0:
                alpha = step * step * float(np.dot(direction, direction)) / sy

        w = np.zeros_like(weights)
        w[support] = v
        return w, rounds, history

    def refine_face(self, matrix: np.ndarray, weights: np.ndarray) -> Tuple[np.ndarray, int, List[float]]:
        """Primal active-set method on the faces of the simplex.

        Each round solves the KKT system of the current face; negative components are
        removed by stepping toward the face minimizer, and nodes whose potential falls
        below the energy are added.

        Returns:
            Tuple: weights, rounds used, objective history
        """
        n = matrix.shape[0]
        w = weights.copy()
        J = float(w @ matrix @ w)
        support = np.flatnonzero(w > 0.0)
        history: List[float] = []
        limit = max(Config.POLISH_MAX_ROUNDS, 2 * n)
        rounds = 0
        margin = 1e-13 * max(1.0, abs(J))

        while rounds < limit:
            rounds += 1
            k = support.size
            system = np.zeros((k + 1, k + 1))
            system[:k, :k] = 2.0 * matrix[np.ix_(support, support)]
            system[:k, k] = -1.0
            system[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            try:
                target = np.linalg.solve(system, rhs)[:k]
            except np.linalg.LinAlgError:
                self.logger.warning("⚠️ Singular face system, keeping Frank-Wolfe weights")
                break
            if not np.all(np.isfinite(target)):
                break

            done = False
            candidate = np.zeros(n)
            if np.any(target < 0.0):
                current = w[support]
                negative = np.flatnonzero(target < 0.0)
                ratios = current[negative] / (current[negative] - target[negative])
                alpha = float(ratios.min())
                moved = current + alpha * (target - current)
                moved[negative[np.argmin(ratios)]] = 0.0
                candidate[support] = np.maximum(moved, 0.0)
            else:
                candidate[support] = target
                potentials = matrix @ candidate
                face_energy = float(np.dot(candidate, potentials))
                outside = np.setdiff1d(np.arange(n), support)
                if outside.size and float((potentials[outside] - face_energy).min()) < -margin:
                    entering = outside[np.argmin(potentials[outside])]
                else:
                    entering = None
                    done = True

            candidate /= candidate.sum()
            candidate_J = float(candidate @ matrix @ candidate)
            if candidate_J > J + margin:
                self.logger.debug(f"Polish round {rounds} would raise J, stopping")
                break
            w, J = candidate, candidate_J
            history.append(J)
            support = np.flatnonzero(w > 0.0)
            if done:
                break
            if not np.any(target < 0.0):
                support = np.union1d(support, [entering])

        return w, rounds, history

    def solve(self, nodes: NodesLike, params: Optional[np.ndarray] = None,
              angular: bool = False) -> Tuple[DiscreteMeasure, EquilibriumReport]:
        """Discrete equilibrium measure on the nodes.

        Raises:
            ValidationError: Empty node set
            ParameterDomainError: Node left of the rotation axis
        """
        points = points_array(nodes)
        n = points.shape[0]
        if n == 0:
            raise ValidationError("Equilibrium problems need at least one node")
        if np.any(points[:, 0] < 0.0):
            raise ParameterDomainError("Equilibrium nodes must lie in H+")

        with log_stage(self.logger, f"Solving equilibrium on {n} nodes under {self.spec.label}"):
            matrix = kernel_matrix(self.spec, points)
            matrix = 0.5 * (matrix + matrix.T)

            weights, gap, iterations, history = self.frank_wolfe(matrix)
            rounds = 0
            if self.options.polish and n > 1:
                weights, rounds, polish_history = self.polish(matrix, weights)
                weights, face_rounds, face_history = self.refine_face(matrix, weights)
                rounds += face_rounds
                history.extend(polish_history + face_history)

        measure = DiscreteMeasure(nodes=points, weights=weights / weights.sum(), params=params, angular=angular)
        gap = wolfe_gap(matrix, measure.weights)
        frostman = frostman_check(measure, self.spec, tol=max(10.0 * gap, self.options.tol))
        report = EquilibriumReport(
            J=frostman.J,
            wolfe_gap=gap,
            frostman_violation=frostman.max_violation,
            frostman_slack=frostman.min_slack,
            iterations=iterations,
            converged=gap <= self.options.tol,
            kernel=self.spec.label,
            n_nodes=n,
            polish_rounds=rounds,
            history=history,
        )
        if report.converged:
            self.logger.info(f"✅ J = {report.J!r}, gap = {gap:.3e} ({iterations} iterations, {rounds} polish rounds)")
        else:
            self.logger.warning(f"⚠️ Gap {gap:.3e} above tolerance after {iterations} iterations")
        return measure, report


def solve_equilibrium(nodes: NodesLike, spec: KernelSpec, tol: float = Config.EQ_TOL,
                      max_iter: int = Config.EQ_MAX_ITER, params: Optional[np.ndarray] = None,
                      angular: bool = False, polish: bool = True) -> Tuple[DiscreteMeasure, EquilibriumReport]:
    """Minimize the quadratic energy over probability measures on the nodes."""
    options = EquilibriumOptions(tol=tol, max_iter=max_iter, polish=polish)
    return EquilibriumSolver(spec, options).solve(nodes, params=params, angular=angular)


def solve_on_curve(curves: Union[GeneratorCurve, Sequence[GeneratorCurve]], spec: KernelSpec,
                   n_nodes: int = Config.EQ_NODES, refine: int = 1,
                   options: Optional[EquilibriumOptions] = None) -> Tuple[DiscreteMeasure, EquilibriumReport]:
    """Equilibrium on equispaced nodes of one or more curves (n_nodes per curve).

    With refine > 1 the problem is solved again on refine * n_nodes nodes and the
    drift |J_refined - J| is recorded in the report.
    """
    curve_list = [curves] if isinstance(curves, GeneratorCurve) else list(curves)
    if refine < 1:
        raise ValidationError(f"refine must be at least 1, got {refine}")
    angular = all(isinstance(curve, Circle) for curve in curve_list)
    solver = EquilibriumSolver(spec, options)

    nodes, params = concatenated_nodes(curve_list, n_nodes)
    measure, report = solver.solve(nodes, params=params, angular=angular)
    if refine > 1:
        fine_nodes, fine_params = concatenated_nodes(curve_list, refine * n_nodes)
        _, fine_report = solver.solve(fine_nodes, params=fine_params, angular=angular)
        report.refinement_drift = abs(fine_report.J - report.J)
        solver.logger.info(f"📐 Refinement x{refine}: J drift {report.refinement_drift:.3e}")
    return measure, report
