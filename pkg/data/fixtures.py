"""
Table fixture loading and integrity checks

Fixture CSVs live next to `tables.yaml`, which carries captions, default
market/contract inputs, printed error metrics and a SHA-256 per file.
"""
import hashlib
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd
import yaml

from config.settings import get_fixtures_dir
from utils.errors import FixtureError, ValidationError

logger = logging.getLogger(__name__)

FIXTURE_COLUMNS = ["param", "mc", "dai_chiu", "model1", "hybrid_va"]
METADATA_FILE = "tables.yaml"


class TableId(str, Enum):
    """Comparison tables shipped as fixtures"""
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"

    @classmethod
    def from_name(cls, name: str) -> "TableId":
        """Accept `T1`, `t1` or `1`"""
        key = name.strip().upper()
        if not key.startswith("T"):
            key = f"T{key}"
        try:
            return cls(key)
        except ValueError:
            valid = ", ".join(t.value for t in cls)
            raise ValidationError(f"unknown table id '{name}' (valid: {valid})")


@dataclass(frozen=True)
class VaryingParameter:
    name: str
    unit: str


@dataclass(frozen=True)
class FixtureDefaults:
    """Inputs shared by every row unless the varying parameter overrides them"""
    spot: float
    rate: float
    vol: float
    strike: float
    barrier_level: float
    maturity: float
    rebate: float
    dividend_times: Tuple[float, ...]
    dividend_amounts: Tuple[float, ...]


@dataclass(frozen=True)
class FixtureRow:
    param: float
    mc: float
    dai_chiu: float
    model1: float
    hybrid_va: float


@dataclass(frozen=True)
class TableFixture:
    """One published comparison table"""
    table_id: TableId
    caption: str
    varying_parameter: VaryingParameter
    rows: Tuple[FixtureRow, ...]
    defaults: FixtureDefaults
    dividend_count: int
    printed_metrics: Dict[str, Dict[str, float]] = field(default_factory=dict)

    def column(self, name: str) -> List[float]:
        """Values of one fixture column in row order"""
        if name not in FIXTURE_COLUMNS:
            raise ValidationError(f"unknown fixture column '{name}'")
        return [getattr(row, name) for row in self.rows]

    @property
    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.__dict__ for row in self.rows], columns=FIXTURE_COLUMNS)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def load_metadata(fixtures_dir: Optional[Union[str, Path]] = None) -> dict:
    """Parse tables.yaml"""
    directory = Path(fixtures_dir) if fixtures_dir else get_fixtures_dir()
    path = directory / METADATA_FILE
    if not path.is_file():
        raise FixtureError(f"fixture metadata not found: {path} (check DIVBARRIER_FIXTURES)")
    try:
        metadata = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise FixtureError(f"fixture metadata {path} is not valid YAML: {e}")
    if not isinstance(metadata, dict) or "tables" not in metadata or "defaults" not in metadata:
        raise FixtureError(f"fixture metadata {path} lacks 'defaults' or 'tables'")
    return metadata


def _parse_defaults(raw: dict) -> FixtureDefaults:
    try:
        return FixtureDefaults(
            spot=float(raw["spot"]),
            rate=float(raw["rate"]),
            vol=float(raw["vol"]),
            strike=float(raw["strike"]),
            barrier_level=float(raw["barrier_level"]),
            maturity=float(raw["maturity"]),
            rebate=float(raw.get("rebate", 0.0)),
            dividend_times=tuple(float(t) for t in raw.get("dividend_times", [])),
            dividend_amounts=tuple(float(d) for d in raw.get("dividend_amounts", [])),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise FixtureError(f"fixture defaults are incomplete: {e}")


def _read_rows(path: Path, table_id: TableId) -> Tuple[FixtureRow, ...]:
    try:
        df = pd.read_csv(path, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise FixtureError(f"fixture {table_id.value} at {path} is unreadable: {e}")

    if list(df.columns) != FIXTURE_COLUMNS:
        raise FixtureError(
            f"fixture {table_id.value} header {list(df.columns)} != {FIXTURE_COLUMNS}"
        )
    numeric = df.apply(pd.to_numeric, errors="coerce")
    if numeric.isna().any().any():
        raise FixtureError(f"fixture {table_id.value} has non-numeric values")
    if (numeric < 0).any().any():
        raise FixtureError(f"fixture {table_id.value} has negative values")
    if not numeric["param"].is_monotonic_increasing:
        raise FixtureError(f"fixture {table_id.value} rows are not sorted by parameter")

    return tuple(
        FixtureRow(**{name: float(value) for name, value in record.items()})
        for record in numeric.to_dict(orient="records")
    )


def load_fixture(table_id: Union[TableId, str],
                 fixtures_dir: Optional[Union[str, Path]] = None) -> TableFixture:
    """Load and verify one table fixture"""
    table_id = table_id if isinstance(table_id, TableId) else TableId.from_name(table_id)
    directory = Path(fixtures_dir) if fixtures_dir else get_fixtures_dir()
    metadata = load_metadata(directory)

    entry = metadata["tables"].get(table_id.value)
    if entry is None:
        raise FixtureError(f"fixture {table_id.value} is not listed in {METADATA_FILE}")

    path = directory / entry["file"]
    if not path.is_file():
        raise FixtureError(f"fixture file not found: {path} (check DIVBARRIER_FIXTURES)")

    expected = entry.get("sha256")
    actual = _sha256(path)
    if expected and actual != expected:
        raise FixtureError(
            f"fixture {table_id.value} checksum mismatch: expected {expected}, got {actual}"
        )

    varying = entry.get("varying_parameter", {})
    fixture = TableFixture(
        table_id=table_id,
        caption=entry.get("caption", ""),
        varying_parameter=VaryingParameter(varying.get("name", ""), varying.get("unit", "")),
        rows=_read_rows(path, table_id),
        defaults=_parse_defaults(metadata["defaults"]),
        dividend_count=int(entry.get("dividend_count", 1)),
        printed_metrics={
            method: {k: float(v) for k, v in values.items()}
            for method, values in entry.get("printed_metrics", {}).items()
        },
    )
    logger.info(f"📄 Loaded fixture {table_id.value} ({len(fixture.rows)} rows) from {path}")
    return fixture
