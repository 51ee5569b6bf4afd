"""
Minimization of N-point energies on generator curves and revolved surfaces.
Multi-start preconditioned projected gradient descent with Armijo backtracking.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..core.config import Config
from ..core.exceptions import NonDifferentiableError, SingularEvaluationError, ValidationError
from ..core.models import (
    TWO_PI, Configuration, ConfigurationMode, EnergyReport, KernelSpec, SolverOptions, StopReason,
)
from ..geometry.curves import GeneratorCurve
from ..utils.logging_utils import get_logger, log_stage
from .pair_energy import energy_gradient, mode_for_kernel, pair_energy, pair_energy_terms


def restart_generator(seed: int, restart: int) -> np.random.Generator:
    """Counter-based stream for one restart; independent of the other restarts."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(restart + 1))


@dataclass
class RestartResult:
    """Outcome of one descent run."""
    config: Configuration
    energy: float
    gradient_norm: float
    iterations: int
    converged: bool
    history: List[float] = field(default_factory=list)
    stop_reason: str = StopReason.MAX_ITER.value


class ConfigurationOptimizer:
    """Projected-gradient minimizer of pair_energy over curve (and angle) parameters.

    Parameters live in the box given by the curve domain: periodic curve parameters and
    rotation angles are wrapped, others clamped. The gradient is scaled by the inverse
    surface metric; trial steps start from the Barzilai-Borwein length capped by max_step
    and are halved until the Armijo condition gives a strict decrease, so accepted
    energies never increase.
    """

    def __init__(self, curve: GeneratorCurve, spec: KernelSpec, options: Optional[SolverOptions] = None):
        self.curve = curve
        self.spec = spec
        self.options = options or SolverOptions()
        self.mode = mode_for_kernel(spec)
        self.logger = get_logger(self.__class__.__name__)

    # Parameter vector helpers

    def _split(self, x: np.ndarray, n: int) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        if self.mode is ConfigurationMode.SURFACE_3D:
            return x[:n], x[n:]
        return x, None

    def _project(self, x: np.ndarray, n: int) -> np.ndarray:
        t, phi = self._split(x, n)
        t = self.curve.wrap(t)
        if phi is None:
            return t
        return np.concatenate([t, np.mod(phi, TWO_PI)])

    def _free_mask(self, n: int) -> np.ndarray:
        """True where a coordinate wraps instead of being clamped."""
        free_t = np.full(n, self.curve.periodic)
        if self.mode is ConfigurationMode.SURFACE_3D:
            return np.concatenate([free_t, np.ones(n, dtype=bool)])
        return free_t

    def _separate(self, x: np.ndarray, n: int) -> np.ndarray:
        """Shift parameters of coincident points apart by Config.COINCIDENCE_SHIFT."""
        x = x.copy()
        t, phi = self._split(x, n)
        original = t.copy()
        angles = np.zeros(n) if phi is None else phi
        order = np.lexsort((angles, original))
        hi = self.curve.domain[1]
        run = 0
        for k in range(1, n):
            i, j = order[k], order[k - 1]
            if original[i] == original[j] and angles[i] == angles[j]:
                run += 1
                step = run * Config.COINCIDENCE_SHIFT
                t[i] = t[i] - step if t[i] + step > hi else t[i] + step
            else:
                run = 0
        return x

    def _config(self, x: np.ndarray, n: int) -> Configuration:
        t, phi = self._split(x, n)
        return Configuration(self.curve, t, phi, self.mode)

    def _energy(self, x: np.ndarray, n: int) -> float:
        return pair_energy(self._config(x, n), self.spec)

    def _gradient(self, x: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
        try:
            return x, energy_gradient(self._config(x, n), self.spec)
        except NonDifferentiableError:
            x = self._separate(x, n)
            return x, energy_gradient(self._config(x, n), self.spec)

    def _clamp(self, x: np.ndarray, free: np.ndarray) -> np.ndarray:
        lo, hi = self.curve.domain
        return np.where(free, x, np.clip(x, lo, hi))

    def _metric(self, x: np.ndarray, n: int) -> np.ndarray:
        """Diagonal of the surface metric in the parameters: |gamma'(t)|^2, then r^2 for the angles."""
        t, phi = self._split(x, n)
        metric = np.sum(self.curve.derivative(t, order=1) ** 2, axis=1)
        if phi is not None:
            r = self.curve.evaluate(t)[:, 0]
            metric = np.concatenate([metric, r * r])
        return np.maximum(metric, Config.METRIC_FLOOR * max(float(metric.max()), 1.0))

    def _stalled(self, history: List[float]) -> bool:
        """Energy decrease over the last stall_window steps is within stall_ulps ulps of E."""
        window = self.options.stall_window
        if len(history) <= window:
            return False
        energy = history[-1]
        return history[-window - 1] - energy <= self.options.stall_ulps * float(np.spacing(abs(energy)))

    def initial_parameters(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform random curve parameters (and angles in [0, 2pi))."""
        lo, hi = self.curve.domain
        t = rng.uniform(lo, hi, size=n)
        if self.mode is ConfigurationMode.SURFACE_3D:
            return np.concatenate([t, rng.uniform(0.0, TWO_PI, size=n)])
        return t

    def descend(self, x0: np.ndarray, n: int) -> RestartResult:
        """Run metric-preconditioned projected gradient descent from x0.

        Tolerances are relative to the energy scale max(1, |E| / N). The run ends when the
        projected gradient falls below grad_tol times the scale, or when the energy stops
        decreasing at working precision: no trial step gives a strict Armijo decrease, or the
        last stall_window steps lowered E by at most stall_ulps ulps. A stalled run counts as
        converged if its projected gradient is below stall_tol times the scale.
        """
        opts = self.options
        free = self._free_mask(n)
        x = self._separate(self._project(x0, n), n)
        energy = self._energy(x, n)
        history = [energy]
        last_step: Optional[np.ndarray] = None
        last_gradient: Optional[np.ndarray] = None
        reason = StopReason.MAX_ITER
        gradient_norm = math.inf
        iterations = 0

        while iterations < opts.max_iter:
            x, g = self._gradient(x, n)
            # projected-gradient stationarity measure
            gradient_norm = float(np.linalg.norm(self._clamp(x - g, free) - x))
            if gradient_norm <= opts.grad_tol * max(1.0, abs(energy) / n):
                reason = StopReason.GRADIENT
                break

            metric = self._metric(x, n)
            direction = g / metric
            if last_step is not None:
                sy = float(np.dot(last_step, g - last_gradient))
                alpha = float(np.dot(last_step, metric * last_step)) / sy if sy > 0 else opts.max_step
            else:
                alpha = 1.0 / max(float(np.max(np.abs(direction))), 1e-300)
            alpha = min(alpha, opts.max_step)

            accepted = False
            resolution = np.finfo(float).eps * (1.0 + np.abs(x))
            while alpha >= Config.MIN_STEP:
                displacement = self._clamp(x - alpha * direction, free) - x
                if np.all(np.abs(displacement) <= resolution):
                    break
                trial = self._separate(self._project(x + displacement, n), n)
                try:
                    trial_energy = self._energy(trial, n)
                except SingularEvaluationError:
                    alpha *= opts.shrink
                    continue
                if trial_energy < energy and trial_energy <= energy + opts.slope * float(np.dot(g, displacement)):
                    accepted = True
                    break
                alpha *= opts.shrink

            iterations += 1
            if not accepted:
                self.logger.debug(f"Line search found no decrease at iteration {iterations}")
                reason = StopReason.STALLED
                break
            last_step, last_gradient = displacement, g
            x, energy = trial, trial_energy
            history.append(energy)
            if self._stalled(history):
                self.logger.debug(f"Energy stalled at iteration {iterations}")
                reason = StopReason.STALLED
                break

        scale = max(1.0, abs(energy) / n)
        converged = reason is StopReason.GRADIENT or (
            reason is StopReason.STALLED and gradient_norm <= opts.stall_tol * scale)
        return RestartResult(self._config(x, n), energy, gradient_norm, iterations, converged, history,
                             reason.value)

    def optimize(self, n: int, seed: int) -> Tuple[Configuration, EnergyReport]:
        """Best of options.restarts descents from seeded uniform starts.

        Raises:
            ValidationError: If n < 2
        """
        if n < 2:
            raise ValidationError(f"A configuration needs N >= 2 points, got {n}")
        results = []
        with log_stage(self.logger, f"Optimizing N={n} under {self.spec.label} on {self.curve.kind} "
                                    f"({self.options.restarts} restarts, seed {seed})"):
            for restart in range(self.options.restarts):
                rng = restart_generator(seed, restart)
                result = self.descend(self.initial_parameters(n, rng), n)
                self.logger.debug(f"Restart {restart}: E = {result.energy!r} after {result.iterations} iterations")
                results.append(result)

        best = min(range(len(results)), key=lambda k: (results[k].energy, k))
        winner = results[best]
        energy, potentials = pair_energy_terms(winner.config, self.spec)
        report = EnergyReport(
            energy=energy,
            potentials=potentials.tolist(),
            gradient_norm=winner.gradient_norm,
            iterations=winner.iterations,
            seed=seed,
            converged=winner.converged,
            kernel=self.spec.label,
            restart_energies=[r.energy for r in results],
            history=winner.history,
            stop_reason=winner.stop_reason,
        )
        if report.converged:
            self.logger.info(f"✅ E = {energy!r} (|grad| = {winner.gradient_norm:.3e}, {winner.stop_reason})")
        else:
            self.logger.warning(f"⚠️ Not converged: E = {energy!r}, |grad| = {winner.gradient_norm:.3e}")
        return winner.config, report


def optimize_config(curve: GeneratorCurve, spec: KernelSpec, N: int, seed: int,
                    opts: Optional[SolverOptions] = None) -> Tuple[Configuration, EnergyReport]:
    """Lowest-energy N-point configuration found by seeded multi-start descent."""
    return ConfigurationOptimizer(curve, spec, opts).optimize(N, seed)
