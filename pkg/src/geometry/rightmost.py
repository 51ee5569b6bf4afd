"""
Right-most portion A_+ of sampled sets and curves.
"""

from typing import Optional, Sequence, Union

import numpy as np

from ..core.config import Config
from ..core.exceptions import ValidationError
from ..core.models import PlanePoint, RightmostSet
from .curves import GeneratorCurve, Polyline

PointInput = Union[Sequence[PlanePoint], np.ndarray]


def _as_array(points: PointInput) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=float).reshape(-1, 2)
    return np.array([[p.x, p.y] for p in points], dtype=float).reshape(-1, 2)


def rightmost(points: PointInput, y_tolerance: float = Config.RIGHTMOST_Y_TOL) -> RightmostSet:
    """Per-height maxima of a finite point set.

    Points are sorted by height and grouped into bins: a new bin opens when a height
    exceeds the first height of the current bin by more than y_tolerance. Every point
    attaining the bin's maximal x is kept.

    Args:
        points: PlanePoints or an (n, 2) array
        y_tolerance: Bin width in y (0 groups exactly equal heights)

    Returns:
        RightmostSet: Samples (y, x_A(y)) and the kept points

    Raises:
        ValidationError: If the input is empty or the tolerance negative
    """
    data = _as_array(points)
    if data.shape[0] == 0:
        raise ValidationError("rightmost needs a nonempty point set")
    if y_tolerance < 0:
        raise ValidationError(f"y_tolerance must be nonnegative, got {y_tolerance}")

    order = np.lexsort((data[:, 0], data[:, 1]))
    ys = data[order, 1]

    # bin boundaries in sorted order
    starts = [0]
    for k in range(1, len(order)):
        if ys[k] - ys[starts[-1]] > y_tolerance:
            starts.append(k)
    starts.append(len(order))

    samples, kept_points, kept_indices = [], [], []
    for lo, hi in zip(starts[:-1], starts[1:]):
        members = order[lo:hi]
        x_max = data[members, 0].max()
        winners = sorted(int(i) for i in members if data[i, 0] == x_max)
        samples.append((float(data[winners[0], 1]), float(x_max)))
        for i in winners:
            kept_indices.append(i)
            kept_points.append(PlanePoint(float(data[i, 0]), float(data[i, 1])))

    return RightmostSet(samples=samples, points=kept_points, indices=kept_indices, y_tolerance=y_tolerance)


def x_extent(curve: GeneratorCurve, y: float, samples: int = Config.PROFILE_SAMPLES) -> Optional[float]:
    """x_A(y) of a curve: largest x where the horizontal line at height y meets the
    densely sampled curve polygon; None when y is outside the curve's height range.
    """
    a, b = curve.domain
    if isinstance(curve, Polyline):
        poly = curve.vertices
    else:
        poly = curve.evaluate(np.linspace(a, b, samples + 1), check=False)
    y0, y1 = poly[:-1, 1], poly[1:, 1]
    x0, x1 = poly[:-1, 0], poly[1:, 0]
    lo, hi = np.minimum(y0, y1), np.maximum(y0, y1)
    hit = (lo <= y) & (y <= hi)
    if not np.any(hit):
        return None
    dy = y1[hit] - y0[hit]
    flat = dy == 0.0
    frac = np.where(flat, 0.0, (y - y0[hit]) / np.where(flat, 1.0, dy))
    crossings = x0[hit] + frac * (x1[hit] - x0[hit])
    crossings = np.where(flat, np.maximum(x0[hit], x1[hit]), crossings)
    return float(crossings.max())
