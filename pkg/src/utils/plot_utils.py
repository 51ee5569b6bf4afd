"""
Deterministic SVG figures of configurations and measures.
"""

from pathlib import Path
from typing import Optional, Union

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ..core.config import Config
from ..core.exceptions import ExportError, ValidationError
from ..geometry.points import lift_arrays
from ..utils.logging_utils import get_logger

logger = get_logger(__name__)

MARKER_AREA = 400.0
LIFT_ANGLES = 48


def orthographic_projection(points: np.ndarray, azimuth: float = 0.6, elevation: float = 0.35) -> np.ndarray:
    """Project 3D points (x, y, zeta), y vertical, onto a view plane; returns (n, 2)."""
    x, y, zeta = points[:, 0], points[:, 1], points[:, 2]
    ca, sa = np.cos(azimuth), np.sin(azimuth)
    ce, se = np.cos(elevation), np.sin(elevation)
    horizontal = ca * x - sa * zeta
    depth = sa * x + ca * zeta
    return np.column_stack([horizontal, ce * y - se * depth])


def marker_sizes(weights: np.ndarray) -> np.ndarray:
    """Marker areas proportional to weight, the heaviest at MARKER_AREA."""
    top = float(weights.max())
    return MARKER_AREA * weights / top if top > 0 else np.zeros_like(weights)


def render_svg(nodes: np.ndarray, weights: Optional[np.ndarray], path: Union[str, Path],
               space_points: Optional[np.ndarray] = None, projection: bool = False,
               title: str = "") -> str:
    """Scatter of generator-plane points with weight-scaled markers, optionally beside an
    orthographic view of the lifted points. Zero-weight nodes are omitted.

    Args:
        nodes: (n, 2) generator-plane points
        weights: Node weights (uniform when None)
        path: SVG output file
        space_points: 3D points for the projection (nodes lifted on a ring of angles when None)
        projection: Add the 3D panel

    Raises:
        ValidationError: No node with positive weight
        ExportError: If the file cannot be written
    """
    nodes = np.asarray(nodes, dtype=float).reshape(-1, 2)
    weights = np.full(nodes.shape[0], 1.0 / max(nodes.shape[0], 1)) if weights is None else np.asarray(weights, float)
    keep = weights > 0.0
    if not np.any(keep):
        raise ValidationError("Nothing to plot: no node carries positive weight")
    nodes, weights = nodes[keep], weights[keep]

    plt.rcParams["svg.hashsalt"] = Config.SVG_HASH_SALT
    ncols = 2 if projection else 1
    fig, axes = plt.subplots(1, ncols, figsize=(5 * ncols, 5), squeeze=False)
    ax = axes[0, 0]
    ax.axvline(0.0, color="0.7", linewidth=0.8)
    ax.scatter(nodes[:, 0], nodes[:, 1], s=marker_sizes(weights), c="tab:blue", alpha=0.8, linewidths=0)
    ax.set_xlabel("x (distance from axis)")
    ax.set_ylabel("y")
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_title(title or f"{nodes.shape[0]} points")

    if projection:
        if space_points is None:
            phi = 2.0 * np.pi * np.arange(LIFT_ANGLES) / LIFT_ANGLES
            space_points = lift_arrays(np.repeat(nodes[:, 0], LIFT_ANGLES), np.repeat(nodes[:, 1], LIFT_ANGLES),
                                       np.tile(phi, nodes.shape[0]))
            sizes = np.repeat(marker_sizes(weights), LIFT_ANGLES) / LIFT_ANGLES ** 0.5
        else:
            sizes = np.full(space_points.shape[0], 8.0)
        view = orthographic_projection(np.asarray(space_points, dtype=float))
        axes[0, 1].scatter(view[:, 0], view[:, 1], s=sizes, c="tab:orange", alpha=0.6, linewidths=0)
        axes[0, 1].set_aspect("equal", adjustable="datalim")
        axes[0, 1].set_axis_off()
        axes[0, 1].set_title("surface of revolution")

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as e:
        raise ExportError(f"Failed to write {path}: {e}")
    finally:
        plt.close(fig)
    logger.info(f"💾 Saved figure {path}")
    return str(path)
