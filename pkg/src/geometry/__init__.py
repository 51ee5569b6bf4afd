"""
Half-plane geometry for revolve.
Points, rotations, generator curves and the right-most set A_+.
"""

from .points import reflect, rotate, lift_to_surface, lift_arrays, rotation_distance_squared
from .curves import (
    GeneratorCurve, Circle, Ellipse, VerticalSegment, Polyline,
    curve_eval, curve_frame, curve_from_spec, curve_to_spec, concatenated_nodes,
)
from .rightmost import rightmost, x_extent

__all__ = [
    'reflect', 'rotate', 'lift_to_surface', 'lift_arrays', 'rotation_distance_squared',
    'GeneratorCurve', 'Circle', 'Ellipse', 'VerticalSegment', 'Polyline',
    'curve_eval', 'curve_frame', 'curve_from_spec', 'curve_to_spec', 'concatenated_nodes',
    'rightmost', 'x_extent',
]
