"""
Dividend schedule normalization and parsing (CSV files, `t:amount` tokens)
"""
import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Union

import pandas as pd

from utils.errors import ValidationError
from .models import Dividend, DividendSchedule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalizationResult:
    """Normalized schedule plus what normalization did to the raw one"""
    schedule: DividendSchedule
    merged: int = 0
    dropped_after_maturity: int = 0
    dropped_zero: int = 0


def normalize_schedule_with_diagnostics(schedule: DividendSchedule,
                                        maturity: float) -> NormalizationResult:
    """Sort, merge same-time entries, drop t > maturity and zero amounts"""
    if maturity <= 0:
        raise ValidationError(f"maturity must be > 0, got {maturity}")

    totals: Dict[float, float] = {}
    dropped_after = 0
    for entry in schedule:
        # Dividend enforces these, but schedules may be built from raw tuples
        if entry.time <= 0:
            raise ValidationError(f"dividend time must be > 0, got {entry.time}")
        if entry.amount < 0:
            raise ValidationError(f"dividend amount must be >= 0, got {entry.amount}")
        if entry.time > maturity:
            dropped_after += 1
            continue
        totals[entry.time] = totals.get(entry.time, 0.0) + entry.amount

    kept = len(schedule) - dropped_after
    merged = kept - len(totals)
    entries = tuple(Dividend(t, d) for t, d in sorted(totals.items()) if d > 0)
    dropped_zero = len(totals) - len(entries)

    return NormalizationResult(
        schedule=DividendSchedule(entries),
        merged=merged,
        dropped_after_maturity=dropped_after,
        dropped_zero=dropped_zero,
    )


def normalize_schedule(schedule: DividendSchedule, maturity: float) -> DividendSchedule:
    """Normalize a schedule against the option maturity"""
    result = normalize_schedule_with_diagnostics(schedule, maturity)
    if result.dropped_after_maturity:
        logger.warning(
            f"Dropped {result.dropped_after_maturity} dividend(s) paid after maturity {maturity}"
        )
    return result.schedule


def parse_dividend_token(token: str) -> Dividend:
    """Parse a `time:amount` token"""
    parts = token.split(":")
    if len(parts) != 2:
        raise ValidationError(f"malformed dividend token '{token}', expected time:amount")
    try:
        time, amount = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValidationError(f"malformed dividend token '{token}', expected numbers")
    return Dividend(time, amount)


def parse_schedule_text(text: str) -> DividendSchedule:
    """
    Parse `time,amount` CSV text, one dividend per line

    A non-numeric first line is treated as a header. Blank lines and
    `#` comments are ignored.
    """
    if not text.strip():
        return DividendSchedule.empty()

    try:
        df = pd.read_csv(
            io.StringIO(text),
            header=None,
            names=["time", "amount"],
            comment="#",
            skip_blank_lines=True,
            skipinitialspace=True,
            dtype=str,
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ValidationError(f"malformed dividend schedule: {e}")

    if df.empty:
        return DividendSchedule.empty()

    numeric = df.apply(pd.to_numeric, errors="coerce")
    if numeric.iloc[0].isna().all():
        # Header row
        numeric = numeric.iloc[1:]
        df = df.iloc[1:]

    bad = numeric.isna().any(axis=1)
    if bad.any():
        first = df[bad].iloc[0]
        raise ValidationError(
            f"malformed dividend schedule line '{first['time']},{first['amount']}'"
        )

    return DividendSchedule.from_pairs(
        zip(numeric["time"].tolist(), numeric["amount"].tolist())
    )


def load_schedule_file(path: Union[str, Path]) -> DividendSchedule:
    """Load a dividend schedule CSV file"""
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"dividend schedule file not found: {path}")
    return parse_schedule_text(path.read_text(encoding="utf-8"))
