"""
Data utilities for revolve.
Parsing of CLI point, list and instance strings into domain objects.
"""

from typing import List, Tuple

from ..core.exceptions import GeometryError, ValidationError
from ..core.models import PlanePoint
from ..geometry.curves import Circle, Ellipse, GeneratorCurve, VerticalSegment

INSTANCE_FORMS = {
    "circle": "circle:cx,cy,r",
    "segment": "segment:R,c,d",
    "ellipse": "ellipse:cx,cy,ae,be",
    "arc": "arc:cx,cy,r,tmin,tmax",
}


def _floats(text: str, count: int, what: str) -> List[float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise ValidationError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ValidationError(f"{what} has a non-numeric entry: {text!r}")


def parse_point(text: str) -> PlanePoint:
    """'x,y' -> PlanePoint."""
    x, y = _floats(text, 2, "A point")
    return PlanePoint(x, y)


def parse_int_list(text: str) -> List[int]:
    """'10,50,100' -> [10, 50, 100]."""
    try:
        values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ValidationError(f"Expected comma-separated integers, got {text!r}")
    if not values:
        raise ValidationError("Empty integer list")
    return values


def parse_instance(text: str) -> Tuple[List[GeneratorCurve], str]:
    """Build the curves of a named check instance.

    Forms: circle:cx,cy,r | segment:R,c,d | ellipse:cx,cy,ae,be | arc:cx,cy,r,tmin,tmax.
    An arc instance is the pair of arcs |t| in [tmin, tmax] of the circle, placed
    symmetrically about its horizontal diameter.

    Returns:
        Tuple: curves and a normalized instance label

    Raises:
        ValidationError: Unknown form or malformed numbers
        GeometryError: Curve leaves H+ or has invalid dimensions
    """
    kind, _, body = text.strip().partition(":")
    if kind not in INSTANCE_FORMS:
        raise ValidationError(f"Unknown instance {text!r}; forms: {', '.join(INSTANCE_FORMS.values())}")
    if kind == "circle":
        cx, cy, r = _floats(body, 3, "circle")
        curves = [Circle((cx, cy), r)]
    elif kind == "segment":
        R, c, d = _floats(body, 3, "segment")
        curves = [VerticalSegment(R, (c, d))]
    elif kind == "ellipse":
        cx, cy, ae, be = _floats(body, 4, "ellipse")
        curves = [Ellipse((cx, cy), (ae, be))]
    else:
        cx, cy, r, tmin, tmax = _floats(body, 5, "arc")
        if not 0.0 <= tmin < tmax:
            raise GeometryError(f"Arc angles need 0 <= tmin < tmax, got {tmin}, {tmax}")
        curves = [Circle((cx, cy), r, (-tmax, -tmin)), Circle((cx, cy), r, (tmin, tmax))]
    return curves, f"{kind}:{body}"
