"""
Tests for half-plane points, generator curves and the right-most set.
"""

import numpy as np
import pytest

from src.core.exceptions import DegenerateFrameError, GeometryError, ParameterDomainError, ValidationError
from src.core.models import PlanePoint, SpacePoint
from src.geometry import (
    Circle, Ellipse, Polyline, VerticalSegment, curve_eval, curve_frame, curve_from_spec, curve_to_spec,
    lift_arrays, lift_to_surface, reflect, rightmost, rotate, rotation_distance_squared, x_extent,
)


class TestPoints:

    def test_reflect(self):
        assert reflect(PlanePoint(1.0, 2.0)) == PlanePoint(-1.0, 2.0)
        assert reflect(PlanePoint(0.0, 5.0)) == PlanePoint(0.0, 5.0)
        w = PlanePoint(3.7, -1.2)
        assert reflect(reflect(w)) == w

    def test_rotate_examples(self):
        half = rotate(SpacePoint(1.0, 0.0, 0.0), np.pi)
        assert half.x == pytest.approx(-1.0, abs=1e-15)
        assert half.zeta == pytest.approx(0.0, abs=1e-15)
        assert rotate(SpacePoint(2.0, 3.0, 4.0), 0.0) == SpacePoint(2.0, 3.0, 4.0)

    def test_rotate_preserves_height_and_radius(self, rng):
        for x, y, zeta, t in rng.uniform(-5.0, 5.0, size=(10 ** 4, 4)):
            p = SpacePoint(x, y, zeta)
            q = rotate(p, t)
            assert q.y == p.y
            assert q.x ** 2 + q.zeta ** 2 == pytest.approx(x ** 2 + zeta ** 2, rel=1e-12, abs=1e-12)

    def test_rotation_distance_example(self):
        z, w = PlanePoint(2.0, 1.0), PlanePoint(1.0, 0.0)
        assert rotation_distance_squared(z, w, 0.5 * np.pi) == pytest.approx(6.0, abs=1e-14)

    def test_rotation_distance_matches_lifted_points(self, rng):
        for x, u, y, v, t in rng.uniform(0.0, 4.0, size=(500, 5)):
            z, w = PlanePoint(x, y), PlanePoint(u, v)
            p = rotate(lift_to_surface(z, 0.0), t)
            q = lift_to_surface(w, 0.0)
            direct = float(np.sum((p.as_array() - q.as_array()) ** 2))
            assert rotation_distance_squared(z, w, t) == pytest.approx(direct, rel=1e-12, abs=1e-12)

    def test_lift_examples(self):
        assert lift_to_surface(PlanePoint(4.0, 0.0), 0.0) == SpacePoint(4.0, 0.0, 0.0)
        back = lift_to_surface(PlanePoint(4.0, 0.0), np.pi)
        assert back.x == pytest.approx(-4.0)
        quarter = lift_to_surface(PlanePoint(3.0, 1.0), 0.5 * np.pi)
        assert quarter.as_array() == pytest.approx([0.0, 1.0, 3.0], abs=1e-15)

    def test_lift_rejects_negative_x(self):
        with pytest.raises(ParameterDomainError):
            lift_to_surface(PlanePoint(-0.1, 0.0), 0.0)
        with pytest.raises(ParameterDomainError):
            lift_arrays(np.array([1.0, -1.0]), np.zeros(2), np.zeros(2))


class TestCurves:

    def test_curve_eval_examples(self, torus_circle, segment):
        assert curve_eval(torus_circle, 0.0) == PlanePoint(4.0, 0.0)
        assert curve_eval(segment, 0.5) == PlanePoint(2.0, 0.5)
        top = curve_eval(torus_circle, 0.5 * np.pi)
        assert (top.x, top.y) == pytest.approx((3.0, 1.0), abs=1e-15)

    def test_parameter_outside_domain(self, segment):
        with pytest.raises(ParameterDomainError):
            curve_eval(segment, 1.5)

    def test_invalid_curves(self):
        with pytest.raises(GeometryError):
            Circle((3.0, 0.0), 0.0)
        with pytest.raises(GeometryError):
            Circle((0.5, 0.0), 1.0)
        with pytest.raises(GeometryError):
            VerticalSegment(2.0, (1.0, 0.0))
        with pytest.raises(GeometryError):
            Polyline([[1.0, 0.0]])

    def test_node_parameters_are_symmetric(self, torus_circle, segment):
        for curve in (torus_circle, segment):
            for n in (7, 8):
                t = curve.node_parameters(n)
                lo, hi = curve.domain
                assert t + t[::-1] == pytest.approx(np.full(n, lo + hi), abs=1e-12)
        t = segment.node_parameters(5)
        assert (t[0], t[-1]) == (0.0, 1.0)

    def test_spec_round_trip(self, torus_circle, segment, ellipse):
        polyline = Polyline([[1.0, 0.0], [2.0, 1.0], [1.0, 2.0]])
        for curve in (torus_circle, segment, ellipse, polyline):
            rebuilt = curve_from_spec(curve_to_spec(curve))
            assert type(rebuilt) is type(curve)
            assert curve_to_spec(rebuilt) == curve_to_spec(curve)

    def test_unknown_curve_kind(self):
        with pytest.raises(GeometryError):
            curve_from_spec({"kind": "spiral"})
        with pytest.raises(GeometryError):
            curve_from_spec({"kind": "circle", "radius": 1.0})


class TestFrames:

    def test_circle_frame(self, torus_circle):
        frame = curve_frame(torus_circle, 0.0)
        assert frame.curvature == pytest.approx(1.0, abs=1e-12)
        assert frame.normal == pytest.approx((-1.0, 0.0), abs=1e-12)
        assert frame.tangent == pytest.approx((0.0, 1.0), abs=1e-12)

    def test_segment_has_no_normal(self, segment):
        frame = curve_frame(segment, 0.5)
        assert frame.curvature == 0.0
        assert frame.normal is None
        assert not frame.has_normal

    def test_ellipse_curvature(self):
        ellipse = Ellipse((3.0, 0.0), (2.0, 1.0))
        assert curve_frame(ellipse, 0.0).curvature == pytest.approx(2.0, rel=1e-12)

    @pytest.mark.parametrize("curve", [
        Circle((3.0, 0.0), 1.0),
        Ellipse((3.0, 0.0), (1.2, 1.0)),
        Ellipse((4.0, 1.0), (2.0, 0.5)),
    ])
    def test_frames_are_orthonormal(self, curve, rng):
        lo, hi = curve.domain
        for t in rng.uniform(lo, hi, size=1000):
            frame = curve.frame(t)
            T, N = np.array(frame.tangent), np.array(frame.normal)
            assert np.linalg.norm(T) == pytest.approx(1.0, abs=1e-10)
            assert np.linalg.norm(N) == pytest.approx(1.0, abs=1e-10)
            assert abs(T @ N) <= 1e-10

    def test_curvature_matches_tangent_differences(self, ellipse, rng):
        h = 1e-5
        for t in rng.uniform(-3.0, 3.0, size=50):
            frame = ellipse.frame(t)
            ahead, behind = ellipse.frame(t + h), ellipse.frame(t - h)
            dT = (np.array(ahead.tangent) - np.array(behind.tangent)) / (2.0 * h)
            kappa = np.linalg.norm(dT) / frame.speed
            assert kappa == pytest.approx(frame.curvature, rel=1e-5)
            assert frame.curvature == pytest.approx(ellipse.curvature_closed_form(t), rel=1e-10)

    def test_polyline_has_no_frame(self):
        polyline = Polyline([[1.0, 0.0], [2.0, 1.0]])
        with pytest.raises(DegenerateFrameError):
            polyline.frame(0.5)


class TestRightmost:

    def test_per_height_maxima(self):
        points = [PlanePoint(1.0, 0.0), PlanePoint(2.0, 0.0), PlanePoint(0.5, 1.0)]
        result = rightmost(points, y_tolerance=0.0)
        assert result.points == [PlanePoint(2.0, 0.0), PlanePoint(0.5, 1.0)]
        assert result.x_at(0.0) == 2.0
        assert result.x_at(0.5) is None

    def test_vertical_segment_is_its_own_aplus(self, segment):
        points = segment.sample(50)
        result = rightmost(points)
        assert len(result) == 50

    def test_circle_keeps_right_half(self, torus_circle):
        points = torus_circle.evaluate(np.linspace(-np.pi, np.pi, 2001))
        result = rightmost(points)
        xs = np.array([p.x for p in result.points])
        assert np.all(xs >= 3.0 - 1e-9)

    def test_permutation_invariance(self, ellipse, rng):
        points = ellipse.evaluate(rng.uniform(-np.pi, np.pi, size=300))
        shuffled = points[rng.permutation(300)]
        a, b = rightmost(points), rightmost(shuffled)
        assert a.samples == b.samples
        assert sorted((p.x, p.y) for p in a.points) == sorted((p.x, p.y) for p in b.points)

    def test_empty_input(self):
        with pytest.raises(ValidationError):
            rightmost([])

    def test_x_extent(self, torus_circle, segment):
        assert x_extent(torus_circle, 0.0) == pytest.approx(4.0, abs=1e-6)
        assert x_extent(torus_circle, 0.5) == pytest.approx(3.0 + np.sqrt(0.75), abs=1e-6)
        assert x_extent(torus_circle, 1.5) is None
        assert x_extent(segment, 0.25) == pytest.approx(2.0)
