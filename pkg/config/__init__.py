"""
Dividend Barrier Pricer Configuration Module

This module provides centralized configuration management for:
- Logging setup
- Monte Carlo defaults
- Fixture directory resolution
"""

# Import main configuration
from .settings import (
    config,
    Config,
    APP_CONFIG,
    MC_CONFIG,
    FIXTURES_CONFIG,
    IS_DEBUG,
    get_fixtures_dir,
)

# Import numerical constants
from .constants import (
    NORM_CDF_TAIL_CUTOFF,
    BARRIER_ROUNDING_SLACK,
    STRICT_TOLERANCE,
    ACCEPTED_TOLERANCE,
    METRIC_DISCREPANCY_THRESHOLD,
    MC_BLOCK_UNITS,
)

# Version info
__version__ = "1.0.0"
__author__ = "Dividend Barrier Team"

# All exports
__all__ = [
    # Settings
    "config",
    "Config",
    "APP_CONFIG",
    "MC_CONFIG",
    "FIXTURES_CONFIG",
    "IS_DEBUG",
    "get_fixtures_dir",

    # Constants
    "NORM_CDF_TAIL_CUTOFF",
    "BARRIER_ROUNDING_SLACK",
    "STRICT_TOLERANCE",
    "ACCEPTED_TOLERANCE",
    "METRIC_DISCREPANCY_THRESHOLD",
    "MC_BLOCK_UNITS",
]
