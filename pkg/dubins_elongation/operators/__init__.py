"""
Operators module: the command handlers behind each CLI subcommand.
"""

from .commands import (
    COMMANDS,
    Command,
    ElongateCommand,
    FeasibleCommand,
    FleetCommand,
    ShortestCommand,
)

__all__ = [
    'COMMANDS',
    'Command',
    'ElongateCommand',
    'FeasibleCommand',
    'FleetCommand',
    'ShortestCommand',
]
