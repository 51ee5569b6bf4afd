"""
Runs named theorem checks on one instance.
"""

import math
from typing import Callable, Dict, List, Optional, Sequence, Union

from ..core.config import Config
from ..core.exceptions import DegenerateFrameError, ValidationError
from ..core.models import (
    CheckReport, EquilibriumOptions, KernelSpec, KernelVariant, SolverOptions,
)
from ..energy.optimizer import optimize_config
from ..equilibrium.solver import solve_on_curve
from ..geometry.curves import Circle, Ellipse, GeneratorCurve
from ..utils.logging_utils import get_logger, log_stage
from .curve_checks import check_convexity, check_kappa
from .kernel_checks import check_horizontal_monotonicity
from .limit_checks import check_kr_limit, check_sandwich
from .support_checks import check_pi3, check_support_in_aplus

HALF_PI = 0.5 * math.pi


def aplus_curve(curve: GeneratorCurve) -> GeneratorCurve:
    """The right-most arc of a closed curve (circles and ellipses); other curves unchanged."""
    if isinstance(curve, Circle):
        return Circle(curve.center, curve.radius, (-HALF_PI, HALF_PI))
    if isinstance(curve, Ellipse):
        return Ellipse(curve.center, curve.semi_axes, (-HALF_PI, HALF_PI))
    return curve


def not_applicable(name: str, instance: str, reason: str) -> CheckReport:
    return CheckReport(name=name, instance=instance, margin=0.0, resolution="n/a",
                       guaranteed=False, notes=f"not applicable: {reason}")


class TheoremChecker:
    """Executable theorem checks on an instance given by one or more generator curves."""

    CHECKS = ("monotone", "convexity", "kappa", "aplus", "pi3", "kr-limit", "sandwich")

    def __init__(self, curves: Sequence[GeneratorCurve], spec: Optional[KernelSpec] = None,
                 instance: str = "", N: Union[int, Sequence[int]] = 100, seed: int = 42, grid_size: int = Config.GRID_SIZE,
                 n_nodes: int = Config.EQ_NODES, solver_options: Optional[SolverOptions] = None,
                 eq_options: Optional[EquilibriumOptions] = None, weak_star: bool = True):
        if not curves:
            raise ValidationError("A check instance needs at least one curve")
        self.curves = list(curves)
        self.spec = spec or KernelSpec(KernelVariant.REDUCED_K)
        self.instance = instance or "+".join(curve.kind for curve in self.curves)
        self.N_list = sorted({int(N)} if isinstance(N, int) else {int(n) for n in N})
        self.N = self.N_list[-1]
        self.seed = seed
        self.grid_size = grid_size
        self.n_nodes = n_nodes
        self.solver_options = solver_options
        self.eq_options = eq_options
        self.weak_star = weak_star
        self.logger = get_logger(self.__class__.__name__)
        self._runners: Dict[str, Callable[[], List[CheckReport]]] = {
            "monotone": self._monotone,
            "convexity": self._convexity,
            "kappa": self._kappa,
            "aplus": self._aplus,
            "pi3": self._pi3,
            "kr-limit": self._kr_limit,
            "sandwich": self._sandwich,
        }

    def run(self, names: Sequence[str] = ("all",)) -> List[CheckReport]:
        """Run checks by name ('all' expands to every check), in the order given.

        Raises:
            ValidationError: Unknown check name, or a pi3 instance whose nodes are not symmetric
        """
        selected: List[str] = []
        for name in names:
            for item in (self.CHECKS if name == "all" else (name,)):
                if item not in self._runners:
                    raise ValidationError(f"Unknown check {item!r}; choose from {', '.join(self.CHECKS)} or all")
                if item not in selected:
                    selected.append(item)

        reports: List[CheckReport] = []
        for name in selected:
            with log_stage(self.logger, f"Running {name} check on {self.instance}"):
                batch = self._runners[name]()
            for report in batch:
                status = "✅" if report.passed else ("❌" if report.guaranteed else "⚠️")
                self.logger.info(f"{status} {report.name} [{report.instance}]: margin {report.margin:.3e}")
            reports.extend(batch)
        return reports

    @staticmethod
    def failed_guaranteed(reports: Sequence[CheckReport]) -> List[CheckReport]:
        return [report for report in reports if report.guaranteed and not report.passed]

    def _label(self, extra: str = "") -> str:
        return f"{self.instance} / {self.spec.label}{extra}"

    def _monotone(self) -> List[CheckReport]:
        if self.spec.variant not in (KernelVariant.REDUCED_K, KernelVariant.LIMIT_KINF):
            return [not_applicable("monotone", self._label(), "stated for K and Kinf only")]
        return [check_horizontal_monotonicity(self.spec)]

    def _convexity(self) -> List[CheckReport]:
        if not self.spec.is_planar:
            return [not_applicable("convexity", self._label(), "planar kernels only")]
        curve = aplus_curve(self.curves[0])
        try:
            return [check_convexity(curve, self.spec, self.grid_size, instance=self._label(", A+ arc"))]
        except DegenerateFrameError as e:
            return [not_applicable("convexity", self._label(), str(e))]

    def _kappa(self) -> List[CheckReport]:
        curve = aplus_curve(self.curves[0])
        try:
            return [check_kappa(curve, self.grid_size, instance=f"{self.instance}, A+ arc")]
        except DegenerateFrameError as e:
            return [not_applicable("kappa", self.instance, str(e))]

    def _aplus(self) -> List[CheckReport]:
        spec = KernelSpec(KernelVariant.REDUCED_K)
        reports = []
        if len(self.curves) == 1:
            # optimal points of the 3D log energy on the revolved surface
            log3d = KernelSpec(KernelVariant.LOG_3D)
            config, _ = optimize_config(self.curves[0], log3d, self.N, self.seed, self.solver_options)
            reports.append(check_support_in_aplus(config, self.curves,
                                                  instance=f"{self.instance}, N = {self.N} optimal points"))
        # an even count on a closed curve puts every node level with its mirror node
        n_nodes = self.n_nodes + self.n_nodes % 2
        measure, _ = solve_on_curve(self.curves, spec, n_nodes, options=self.eq_options)
        reports.append(check_support_in_aplus(measure, self.curves,
                                              instance=f"{self.instance}, equilibrium on {measure.n} nodes"))
        return reports

    def _pi3(self) -> List[CheckReport]:
        if not all(isinstance(curve, Circle) for curve in self.curves):
            return [not_applicable("pi3", self.instance, "circles and symmetric arcs only")]
        # asymmetric node sets raise ValidationError
        return [check_pi3(self.curves, n_nodes=self.n_nodes, options=self.eq_options, instance=self.instance)]

    def _kr_limit(self) -> List[CheckReport]:
        return [check_kr_limit(weak_star=self.weak_star, options=self.eq_options)]

    def _sandwich(self) -> List[CheckReport]:
        if self.spec.variant not in (KernelVariant.REDUCED_K, KernelVariant.SCALED_KR, KernelVariant.LIMIT_KINF):
            return [not_applicable("sandwich", self._label(), "continuous half-plane kernels only")]
        N_list = self.N_list
        if len(N_list) == 1:
            N_list = sorted({max(2, self.N // 10), max(2, self.N // 2), max(2, self.N)})
        return [check_sandwich(self.curves[0], self.spec, N_list, self.seed, self.n_nodes,
                               self.solver_options, self.eq_options)]
