"""
Shared pytest fixtures for revolve.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from src.core.models import EquilibriumOptions, KernelSpec, KernelVariant, SolverOptions
from src.geometry.curves import Circle, Ellipse, VerticalSegment


@pytest.fixture
def torus_circle():
    """Generator circle of the standard torus: center (3, 0), radius 1."""
    return Circle((3.0, 0.0), 1.0)


@pytest.fixture
def right_arc():
    """Right half of the torus circle, the A+ of the full circle."""
    return Circle((3.0, 0.0), 1.0, (-0.5 * np.pi, 0.5 * np.pi))


@pytest.fixture
def segment():
    """Vertical segment from 2 + 0i to 2 + 1i."""
    return VerticalSegment(2.0, (0.0, 1.0))


@pytest.fixture
def ellipse():
    return Ellipse((3.0, 0.0), (1.2, 1.0))


@pytest.fixture
def K():
    return KernelSpec(KernelVariant.REDUCED_K)


@pytest.fixture
def Kinf():
    return KernelSpec(KernelVariant.LIMIT_KINF)


@pytest.fixture
def log3d():
    return KernelSpec(KernelVariant.LOG_3D)


@pytest.fixture
def fast_solver():
    """Few restarts and a short iteration cap for unit tests."""
    return SolverOptions(restarts=2, max_iter=2000, grad_tol=1e-7)


@pytest.fixture
def eq_options():
    return EquilibriumOptions(tol=1e-10, max_iter=50000)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
