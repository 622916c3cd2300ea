"""
Logging utility for the dubins_elongation package.

Provides a centralized logger with a configurable log level and a helper
for rendering path lengths (including unbounded ones) in log lines.
"""

import logging
import math

# Create the package logger
logger = logging.getLogger('dubins_elongation')
logger.setLevel(logging.WARNING)  # Default: only warnings and errors

# Console handler on stderr so reports on stdout stay clean
_handler = logging.StreamHandler()
_handler.setLevel(logging.DEBUG)
_formatter = logging.Formatter('[dubins] %(levelname)s: %(message)s')
_handler.setFormatter(_formatter)
logger.addHandler(_handler)

# Prevent log propagation to root logger (avoids duplicate messages)
logger.propagate = False


def set_debug_mode(enabled: bool):
    """Toggle debug logging on/off.

    Args:
        enabled: If True, sets log level to DEBUG. Otherwise, WARNING.
    """
    logger.setLevel(logging.DEBUG if enabled else logging.WARNING)


def format_length(value: float) -> str:
    """Render a path length for log output.

    Args:
        value: Length in the problem's length units, possibly infinite.

    Returns:
        '+inf' for unbounded values, otherwise the value with 6 decimals.
    """
    if value is None:
        return "none"
    if math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    return f"{value:.6f}"
