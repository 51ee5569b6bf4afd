"""
Tests for the closed forms and the executable theorem checks.
"""

import math

import numpy as np
import pytest

from src.checks import (
    TheoremChecker, aplus_curve, check_convexity, check_horizontal_monotonicity, check_kappa, check_kr_limit,
    check_pi3, check_sandwich, check_support_in_aplus, circle_kappa_terms, circle_kinf, circle_kinf_d2t,
    circle_kinf_sym, circle_kinf_sym_dt, kernel_d2t, kr_limit_errors, potential_slope, segment_k, segment_k_d2t,
    weak_star_distances,
)
from src.core.exceptions import ConfigurationError, DegenerateFrameError, ValidationError
from src.core.models import (
    CheckReport, Configuration, DiscreteMeasure, KernelSpec, KernelVariant, PlanePoint, SolverOptions,
)
from src.equilibrium import solve_on_curve, support_estimate
from src.geometry import Circle, Ellipse, Polyline, VerticalSegment
from src.kernels import k_inf, k_inf_sym, reduced_k
from src.utils import parse_instance

PI_THIRD = math.pi / 3.0


class TestClosedForms:

    def test_segment_kernel(self):
        R = 2.0
        for t, s in [(0.0, 1.0), (0.3, 0.1), (0.5, 0.5)]:
            assert segment_k(t, s, R) == pytest.approx(reduced_k(PlanePoint(R, t), PlanePoint(R, s)), abs=1e-14)

    def test_segment_second_derivative_value(self):
        assert segment_k_d2t(0.0, 1.0, 1.0) == pytest.approx(5.0 ** -1.5, abs=1e-15)
        assert segment_k_d2t(0.0, 1.0, 1.0) == pytest.approx(0.0894427, abs=1e-7)

    def test_circle_limit_kernel(self):
        circle = Circle((3.0, 0.0), 1.0)
        for t, s in [(0.2, -0.4), (1.0, 2.5), (-3.0, 0.1)]:
            z, w = circle.evaluate(t), circle.evaluate(s)
            direct = k_inf(PlanePoint(*z), PlanePoint(*w))
            assert circle_kinf(t, s, 1.0, 3.0) == pytest.approx(direct, abs=1e-14)

    def test_symmetrized_circle_forms(self):
        # the closed forms take the center on the axis; a center at x = 1 shifts them by -2
        circle = Circle((1.0, 0.0), 1.0)
        for t, s in [(0.3, 1.2), (1.4, 0.2), (0.9, 0.9 + 1e-3)]:
            z, w = circle.evaluate(t), circle.evaluate(s)
            expected = k_inf_sym(PlanePoint(*z), PlanePoint(*w)) + 2.0
            assert circle_kinf_sym(t, s) == pytest.approx(expected, abs=1e-14)
            h = 1e-6
            numeric = (circle_kinf_sym(t + h, s) - circle_kinf_sym(t - h, s)) / (2.0 * h)
            assert circle_kinf_sym_dt(t, s) == pytest.approx(numeric, abs=1e-7)

    def test_kappa_terms_on_the_curve(self):
        c1, c2 = circle_kappa_terms(np.array([0.3]), 1.1, 1.0, 3.0, reflected=False)
        assert c1[0] == pytest.approx(-abs(math.sin(0.4)))
        assert c2[0] == 0.5

    def test_kappa_bracket_for_reflected_point(self):
        R, t, s = 3.0, 0.4, -0.7
        _, c2 = circle_kappa_terms(np.array([t]), s, 1.0, R, reflected=True)
        expected = 0.5 + 2 * R * (R + math.cos(s)) / ((2 * R + math.cos(s) + math.cos(t)) ** 2
                                                      + (math.sin(s) - math.sin(t)) ** 2)
        assert c2[0] == pytest.approx(expected, rel=1e-14)
        assert c2[0] > 0.5


class TestSecondDerivatives:

    def test_segment_methods_agree(self, segment, K):
        t = np.linspace(0.0, 1.0, 41)[1:-1]
        for s in (0.0, 0.37, 1.0):
            t_off = t[np.abs(t - s) > 1e-3]
            closed = kernel_d2t(segment, K, t_off, s, method="closed")
            assert kernel_d2t(segment, K, t_off, s, method="analytic") == pytest.approx(closed, abs=1e-10)
            assert kernel_d2t(segment, K, t_off, s, method="fd") == pytest.approx(closed, abs=1e-5)

    def test_circle_limit_kernel_methods_agree(self, right_arc, Kinf, rng):
        for s in rng.uniform(-1.5, 1.5, size=5):
            t = rng.uniform(-1.5, 1.5, size=20)
            t = t[np.abs(t - s) > 1e-2]
            closed = circle_kinf_d2t(t, s, 1.0)
            assert kernel_d2t(right_arc, Kinf, t, s, method="analytic") == pytest.approx(closed, abs=1e-8)
            assert kernel_d2t(right_arc, Kinf, t, s, method="fd") == pytest.approx(closed, abs=1e-5)

    def test_analytic_matches_differences_on_ellipse(self, ellipse):
        t = np.linspace(-1.4, 1.4, 15)
        s = 0.7
        for spec in (KernelSpec(KernelVariant.REDUCED_K), KernelSpec(KernelVariant.SCALED_KR, R=4.0),
                     KernelSpec(KernelVariant.SYMMETRIZED_KINF, axis_y=0.2)):
            analytic = kernel_d2t(ellipse, spec, t, s, method="analytic")
            assert kernel_d2t(ellipse, spec, t, s, method="fd") == pytest.approx(analytic, abs=1e-5)

    def test_no_closed_form(self, ellipse, K):
        with pytest.raises(ConfigurationError):
            kernel_d2t(ellipse, K, np.array([0.1]), 0.5, method="closed")
        with pytest.raises(ConfigurationError):
            kernel_d2t(ellipse, K, np.array([0.1]), 0.5, method="spline")


class TestKernelChecks:

    @pytest.mark.parametrize("variant", [KernelVariant.REDUCED_K, KernelVariant.LIMIT_KINF])
    def test_horizontal_monotonicity(self, variant):
        report = check_horizontal_monotonicity(KernelSpec(variant))
        assert report.passed
        assert report.guaranteed
        assert report.name == "monotone"
        assert not report.details

    def test_monotonicity_off_grid_point(self, K):
        report = check_horizontal_monotonicity(K, w=(2.5, -1.0), offsets=np.linspace(0.2, 3.0, 50),
                                               x_grid=np.linspace(0.0, 6.0, 301))
        assert report.passed

    def test_monotonicity_needs_k_or_limit(self):
        with pytest.raises(ConfigurationError):
            check_horizontal_monotonicity(KernelSpec(KernelVariant.SCALED_KR, R=10.0))


class TestCurveChecks:

    def test_segment_convexity(self, segment, K):
        report = check_convexity(segment, K, grid_size=41)
        assert report.passed and report.guaranteed
        assert "closed" in report.resolution
        assert "41 diagonal cells" in report.notes

    def test_circle_limit_kernel_convexity(self, right_arc, Kinf):
        report = check_convexity(right_arc, Kinf, grid_size=41)
        assert report.passed and report.guaranteed

    def test_circle_reduced_kernel_convexity(self, right_arc, K):
        report = check_convexity(right_arc, K, grid_size=41)
        assert report.passed and report.guaranteed

    def test_ellipse_convexity_is_exploratory(self, ellipse, K):
        report = check_convexity(Ellipse((3.0, 0.0), (1.2, 1.0), (-0.5 * np.pi, 0.5 * np.pi)), K, grid_size=21)
        assert not report.guaranteed

    def test_convexity_rejects_polylines_and_3d_kernels(self, segment, log3d, K):
        with pytest.raises(DegenerateFrameError):
            check_convexity(Polyline([[1.0, 0.0], [2.0, 1.0]]), K)
        with pytest.raises(ConfigurationError):
            check_convexity(segment, log3d)

    def test_kappa_on_circle(self, right_arc):
        report = check_kappa(right_arc, grid_size=51)
        assert report.passed and report.guaranteed
        assert "closed-form discrepancy" in report.notes

    def test_kappa_on_ellipse_reports(self):
        report = check_kappa(Ellipse((3.0, 0.0), (1.2, 1.0), (-0.5 * np.pi, 0.5 * np.pi)), grid_size=21)
        assert not report.guaranteed
        assert isinstance(report.margin, float)

    def test_kappa_needs_curvature(self, segment):
        with pytest.raises(DegenerateFrameError):
            check_kappa(segment, grid_size=11)


class TestSupportChecks:

    def test_segment_is_its_own_aplus(self, segment, rng):
        config = Configuration(segment, rng.uniform(0.0, 1.0, 20))
        assert check_support_in_aplus(config, segment).passed

    def test_left_point_fails(self, torus_circle):
        config = Configuration(torus_circle, [0.0, 0.2, math.pi])
        report = check_support_in_aplus(config, torus_circle)
        assert not report.passed
        assert report.details[0]["x"] == pytest.approx(2.0)

    def test_equilibrium_on_full_circle(self, torus_circle, K, eq_options):
        measure, _ = solve_on_curve(torus_circle, K, 100, options=eq_options)
        report = check_support_in_aplus(measure, torus_circle)
        assert report.passed

    def test_degenerate_arc(self, eq_options):
        t_min = PI_THIRD + 0.2
        curves, _ = parse_instance(f"arc:3,0,1,{t_min!r},{0.5 * math.pi!r}")
        report = check_pi3(curves, n_nodes=41, options=eq_options)
        assert report.passed
        assert "two-point split" in report.notes
        measure, _ = solve_on_curve(curves, KernelSpec(KernelVariant.LIMIT_KINF), 41, options=eq_options)
        heaviest = np.argsort(-measure.weights)[:2]
        assert measure.weights[heaviest].sum() >= 0.99
        assert np.abs(measure.params[heaviest]) == pytest.approx([t_min, t_min], abs=1e-12)

    def test_full_circle_bound(self, torus_circle, eq_options):
        report = check_pi3(torus_circle, n_nodes=121, options=eq_options)
        assert report.passed
        assert report.notes.startswith("theta = ")

    @pytest.mark.slow
    def test_full_circle_bound_at_default_resolution(self, torus_circle):
        measure, _ = solve_on_curve(torus_circle, KernelSpec(KernelVariant.LIMIT_KINF), 401)
        assert np.max(np.abs(measure.weights - measure.weights[::-1])) <= 1e-8
        assert support_estimate(measure).theta <= PI_THIRD + 2.0 * (2.0 * math.pi / 401)
        assert check_pi3(torus_circle, measure=measure).passed

    def test_full_circle_bound_on_a_zero_to_two_pi_circle(self, eq_options):
        circle = Circle((3.0, 0.0), 1.0, (0.0, 2.0 * math.pi))
        report = check_pi3(circle, n_nodes=121, options=eq_options)
        assert report.passed

    def test_potential_increases_past_two_point_split(self):
        circle = Circle((3.0, 0.0), 1.0)
        s = PI_THIRD + 0.2
        m = DiscreteMeasure(nodes=circle.evaluate(np.array([-s, s])), weights=[0.5, 0.5],
                            params=[-s, s], angular=True)
        t = np.linspace(s + 0.01, 0.5 * math.pi, 20)
        slopes = potential_slope(m, circle, t)
        assert np.all(slopes > 0.0)
        assert slopes == pytest.approx(np.sin(t) - math.cos(0.5 * s) * np.cos(0.5 * t), abs=1e-12)

    def test_asymmetric_nodes_rejected(self):
        arc = Circle((3.0, 0.0), 1.0, (0.1, 1.0))
        t = arc.node_parameters(9)
        m = DiscreteMeasure(nodes=arc.evaluate(t), weights=np.full(9, 1.0 / 9), params=t, angular=True)
        with pytest.raises(ValidationError):
            check_pi3([arc], measure=m)

    def test_pi3_needs_circles(self, segment):
        with pytest.raises(ValidationError):
            check_pi3([segment])


class TestLimitChecks:

    def test_error_rate(self):
        errors = kr_limit_errors([50.0, 100.0, 200.0, 400.0])
        ratios = errors[1:] / errors[:-1]
        assert np.all((ratios >= 0.4) & (ratios <= 0.6))

    def test_axis_point_has_no_error(self):
        zero = np.zeros(1)
        errors = kr_limit_errors([10.0, 100.0], grid=(zero, zero, zero, zero))
        assert errors.tolist() == [0.0, 0.0]

    def test_check_without_weak_star(self):
        report = check_kr_limit(weak_star=False)
        assert report.passed
        assert report.name == "kr-limit"
        assert len(report.details) == 3

    def test_radii_validation(self):
        with pytest.raises(ValidationError):
            check_kr_limit(radii=[100.0], weak_star=False)
        with pytest.raises(ValidationError):
            check_kr_limit(radii=[100.0, 50.0], weak_star=False)

    def test_sandwich_needs_continuous_kernel(self, torus_circle, log3d):
        with pytest.raises(ConfigurationError):
            check_sandwich(torus_circle, log3d)

    @pytest.mark.slow
    def test_weak_star_distances_decrease(self):
        distances = weak_star_distances([10.0, 100.0, 1000.0])
        assert distances[0] > distances[1] > distances[2]

    @pytest.mark.slow
    def test_sandwich_on_torus_circle(self, torus_circle, K):
        options = SolverOptions(restarts=2, max_iter=20000)
        report = check_sandwich(torus_circle, K, (10, 50), seed=42, n_nodes=201, opts=options)
        assert report.passed
        assert [row["N"] for row in report.details] == [10, 50]


class TestTheoremChecker:

    def test_unknown_check(self, torus_circle):
        with pytest.raises(ValidationError):
            TheoremChecker([torus_circle]).run(["volume"])

    def test_needs_curves(self):
        with pytest.raises(ValidationError):
            TheoremChecker([])

    def test_runs_selected_checks(self, torus_circle):
        checker = TheoremChecker([torus_circle], instance="circle:3,0,1", grid_size=21)
        reports = checker.run(["kappa", "monotone", "kappa"])
        assert [r.name for r in reports] == ["kappa", "monotone"]
        assert all(r.passed for r in reports)
        assert TheoremChecker.failed_guaranteed(reports) == []

    def test_not_applicable_checks(self, segment):
        checker = TheoremChecker([segment], spec=KernelSpec(KernelVariant.LOG_3D), grid_size=11)
        reports = checker.run(["pi3", "monotone", "convexity"])
        assert all(not r.guaranteed for r in reports)
        assert all(r.notes.startswith("not applicable") for r in reports)

    def test_asymmetric_pi3_instance_raises(self):
        arc = Circle((3.0, 0.0), 1.0, (0.1, 1.0))
        checker = TheoremChecker([arc], instance="lopsided arc", n_nodes=21)
        with pytest.raises(ValidationError):
            checker.run(["pi3"])

    def test_failed_guaranteed(self):
        failing = CheckReport(name="aplus", instance="x", margin=-1.0, resolution="r")
        exploratory = CheckReport(name="kappa", instance="x", margin=-1.0, resolution="r", guaranteed=False)
        assert TheoremChecker.failed_guaranteed([failing, exploratory]) == [failing]
        assert failing.to_dict()["pass"] is False

    def test_aplus_curve(self, torus_circle, segment, ellipse):
        assert aplus_curve(torus_circle).domain == (-0.5 * math.pi, 0.5 * math.pi)
        assert aplus_curve(ellipse).domain == (-0.5 * math.pi, 0.5 * math.pi)
        assert aplus_curve(segment) is segment

    @pytest.mark.slow
    def test_full_suite_on_torus_circle(self, torus_circle):
        checker = TheoremChecker([torus_circle], instance="circle:3,0,1", N=[10, 50, 100])
        reports = checker.run(["all"])
        assert TheoremChecker.failed_guaranteed(reports) == []
