"""
Published comparison tables shipped as verified fixtures
"""

from .fixtures import (
    FIXTURE_COLUMNS,
    TableId,
    VaryingParameter,
    FixtureDefaults,
    FixtureRow,
    TableFixture,
    load_metadata,
    load_fixture,
)

__all__ = [
    "FIXTURE_COLUMNS",
    "TableId",
    "VaryingParameter",
    "FixtureDefaults",
    "FixtureRow",
    "TableFixture",
    "load_metadata",
    "load_fixture",
]
