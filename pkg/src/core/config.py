"""
Configuration settings for revolve.
Centralized configuration management for all modules.
"""

import os
from pathlib import Path

from .exceptions import ConfigurationError

class Config:
    """Centralized configuration for revolve."""

    # Base directories
    BASE_DIR = Path(__file__).parent.parent.parent
    OUTPUT_DIR = BASE_DIR / "output"
    LOGS_DIR = BASE_DIR / "logs"

    # Parallelism
    THREADS_ENV_VAR = "REVOLVE_THREADS"
    BLOCK_ROWS = 128

    # Geometry
    RIGHTMOST_Y_TOL = 1e-9
    FRAME_TOL = 1e-12
    ZERO_CURVATURE = 1e-14
    PROFILE_SAMPLES = 20000

    # Kernels
    QUADRATURE_NODES = 2 ** 14
    MIN_QUADRATURE_NODES = 16

    # Discrete energy optimizer
    OPT_RESTARTS = 8
    OPT_GRAD_TOL = 1e-9
    OPT_MAX_ITER = 10 ** 5
    ARMIJO_SHRINK = 0.5
    ARMIJO_SLOPE = 1e-4
    MIN_STEP = 1e-16
    MAX_STEP = 10.0
    COINCIDENCE_SHIFT = 1e-12
    # tolerances scale with max(1, |E| / N)
    OPT_STALL_WINDOW = 25
    OPT_STALL_ULPS = 100
    OPT_STALL_TOL = 1e-4
    METRIC_FLOOR = 1e-8

    # Equilibrium solver
    EQ_NODES = 401
    EQ_TOL = 1e-9
    EQ_MAX_ITER = 2 * 10 ** 5
    SUPPORT_THRESHOLD_SCALE = 1e-6
    POLISH_MAX_ROUNDS = 200

    # Theorem checks
    FD_STEP = 1e-4
    GRID_SIZE = 201
    STRICT_MARGIN = 1e-10
    APLUS_TOL = 1e-6
    SANDWICH_SLACK = 1e-3
    KR_LIMIT_RADII = (50.0, 100.0, 200.0, 400.0)
    KR_WEAK_STAR_RADII = (10.0, 100.0, 1000.0)

    # Logging configuration
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    LOG_LEVEL = 'INFO'

    # Export settings
    FLOAT_FORMAT = '%.17g'
    TIMESTAMP_FORMAT = '%Y%m%d_%H%M%S'
    SVG_HASH_SALT = 'revolve'

    @classmethod
    def ensure_directories(cls):
        """Ensure all required directories exist."""
        for directory in [cls.OUTPUT_DIR, cls.LOGS_DIR]:
            directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def get_output_filename(cls, prefix: str, extension: str = 'csv') -> str:
        """Generate timestamped output filename."""
        from datetime import datetime
        timestamp = datetime.now().strftime(cls.TIMESTAMP_FORMAT)
        return f"{prefix}_{timestamp}.{extension}"

    @classmethod
    def max_threads(cls) -> int:
        """Number of worker threads allowed for kernel evaluation.

        Reads REVOLVE_THREADS; unset means single-threaded.

        Raises:
            ConfigurationError: If the variable is not a positive integer
        """
        raw = os.environ.get(cls.THREADS_ENV_VAR)
        if raw is None or raw.strip() == "":
            return 1
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigurationError(f"{cls.THREADS_ENV_VAR} must be an integer, got {raw!r}")
        if threads < 1:
            raise ConfigurationError(f"{cls.THREADS_ENV_VAR} must be positive, got {threads}")
        return threads
