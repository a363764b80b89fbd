"""
Shared market, contract and schedule fixtures
"""
import pytest

from instruments import BarrierContract, DividendSchedule, MarketState, VanillaContract


@pytest.fixture
def market() -> MarketState:
    return MarketState(spot=50.0, rate=0.03, vol=0.2)


@pytest.fixture
def call() -> VanillaContract:
    return VanillaContract(strike=50.0, maturity=1.0)


@pytest.fixture
def uo_call(call) -> BarrierContract:
    return BarrierContract(vanilla=call, barrier_level=65.0)


@pytest.fixture
def mid_dividend() -> DividendSchedule:
    """d=1 paid at t=0.5"""
    return DividendSchedule.from_pairs([(0.5, 1.0)])


@pytest.fixture
def no_dividends() -> DividendSchedule:
    return DividendSchedule.empty()


@pytest.fixture(autouse=True)
def _default_fixture_dir(monkeypatch):
    monkeypatch.delenv("DIVBARRIER_FIXTURES", raising=False)
