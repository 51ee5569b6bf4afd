"""
Utilities module for revolve.
Contains logging, file management, parsing and plotting helpers.
"""

from .logging_utils import get_logger, log_stage, setup_logging
from .file_utils import FileManager
from .data_utils import parse_instance, parse_int_list, parse_point
from .plot_utils import render_svg, orthographic_projection

__all__ = [
    'get_logger', 'log_stage', 'setup_logging', 'FileManager', 'parse_instance', 'parse_int_list', 'parse_point',
    'render_svg', 'orthographic_projection',
]
