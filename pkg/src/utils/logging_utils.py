"""
Logging utilities for revolve.
Provides centralized logging configuration and timed solver stages.
"""

import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, Union

from ..core.config import Config


def setup_logging(log_level: Optional[str] = None, log_file: Optional[Union[str, Path]] = None) -> None:
    """Setup centralized logging configuration.

    Repeated calls replace the handlers of earlier ones, so every CLI run (and every
    test invoking main) writes to its own log file.

    Args:
        log_level: Logging level (uses config default if None)
        log_file: Log file path (uses a timestamped file in logs/ if None)
    """
    Config.ensure_directories()
    level = getattr(logging, (log_level or Config.LOG_LEVEL).upper(), logging.INFO)

    if log_file is None:
        log_file = Config.LOGS_DIR / Config.get_output_filename('revolve', 'log')
    Path(log_file).parent.mkdir(parents=True, exist_ok=True)

    logging.basicConfig(
        level=level,
        format=Config.LOG_FORMAT,
        handlers=[
            logging.FileHandler(log_file, encoding='utf-8'),
            logging.StreamHandler(sys.stdout)
        ],
        force=True,
    )

    # Plotting backends are chatty at INFO
    logging.getLogger('matplotlib').setLevel(logging.WARNING)
    logging.getLogger('PIL').setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the specified name.

    Args:
        name: Logger name (usually __name__ or class name)

    Returns:
        logging.Logger: Configured logger instance
    """
    return logging.getLogger(name)


@contextmanager
def log_stage(logger: logging.Logger, message: str) -> Iterator[None]:
    """Log '🔄 message' on entry and its wall time at DEBUG on normal exit."""
    logger.info(f"🔄 {message}")
    started = time.perf_counter()
    yield
    logger.debug(f"⏱️ {message}: {time.perf_counter() - started:.3f}s")
