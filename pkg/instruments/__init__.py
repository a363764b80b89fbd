"""
Instruments Module for the Dividend Barrier Pricer

This module provides:
- Market state and contract value types
- Dividend schedules and their normalization
- Schedule parsing for the CLI and fixtures
"""

from .models import (
    OptionSide,
    BarrierStyle,
    MarketState,
    Dividend,
    DividendSchedule,
    VanillaContract,
    BarrierContract,
)
from .schedule import (
    NormalizationResult,
    normalize_schedule,
    normalize_schedule_with_diagnostics,
    parse_dividend_token,
    parse_schedule_text,
    load_schedule_file,
)

__all__ = [
    # Models
    "OptionSide",
    "BarrierStyle",
    "MarketState",
    "Dividend",
    "DividendSchedule",
    "VanillaContract",
    "BarrierContract",

    # Schedules
    "NormalizationResult",
    "normalize_schedule",
    "normalize_schedule_with_diagnostics",
    "parse_dividend_token",
    "parse_schedule_text",
    "load_schedule_file",
]
