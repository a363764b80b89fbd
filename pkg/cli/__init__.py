"""
Command-line frontend (`python -m cli <subcommand>`)
"""

from .app import build_parser, run, main, EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL

__all__ = [
    "build_parser",
    "run",
    "main",
    "EXIT_OK",
    "EXIT_VALIDATION",
    "EXIT_NUMERICAL",
]
