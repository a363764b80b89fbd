"""
Market state, dividend schedule and option contract data structures
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Tuple

from utils.errors import ValidationError


class OptionSide(str, Enum):
    """Vanilla payoff side"""
    CALL = "call"
    PUT = "put"


class BarrierStyle(str, Enum):
    """Knock-out styles with a closed form in this library"""
    UP_AND_OUT = "up-and-out"


def _require(condition: bool, message: str):
    if not condition:
        raise ValidationError(message)


@dataclass(frozen=True)
class MarketState:
    """Spot, flat continuously-compounded rate and flat volatility"""
    spot: float
    rate: float
    vol: float

    def __post_init__(self):
        _require(math.isfinite(self.spot) and self.spot > 0, f"spot must be > 0, got {self.spot}")
        _require(math.isfinite(self.vol) and self.vol > 0, f"vol must be > 0, got {self.vol}")
        _require(math.isfinite(self.rate), f"rate must be finite, got {self.rate}")

    def with_spot(self, spot: float) -> "MarketState":
        return MarketState(spot=spot, rate=self.rate, vol=self.vol)

    def with_vol(self, vol: float) -> "MarketState":
        return MarketState(spot=self.spot, rate=self.rate, vol=vol)


@dataclass(frozen=True)
class Dividend:
    """Cash dividend of `amount` paid at `time` (years)"""
    time: float
    amount: float

    def __post_init__(self):
        _require(math.isfinite(self.time) and self.time > 0,
                 f"dividend time must be > 0, got {self.time}")
        _require(math.isfinite(self.amount) and self.amount >= 0,
                 f"dividend amount must be >= 0, got {self.amount}")


@dataclass(frozen=True)
class DividendSchedule:
    """Ordered sequence of cash dividends"""
    entries: Tuple[Dividend, ...] = field(default_factory=tuple)

    def __post_init__(self):
        # Accept any iterable of Dividend, store as a tuple
        object.__setattr__(self, "entries", tuple(self.entries))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]]) -> "DividendSchedule":
        """Build from (time, amount) pairs"""
        return cls(tuple(Dividend(float(t), float(d)) for t, d in pairs))

    @classmethod
    def empty(cls) -> "DividendSchedule":
        return cls(())

    @property
    def times(self) -> Tuple[float, ...]:
        return tuple(e.time for e in self.entries)

    @property
    def amounts(self) -> Tuple[float, ...]:
        return tuple(e.amount for e in self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def to_pairs(self) -> list[Tuple[float, float]]:
        return [(e.time, e.amount) for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Dividend]:
        return iter(self.entries)


@dataclass(frozen=True)
class VanillaContract:
    """European vanilla option terms"""
    strike: float
    maturity: float
    side: OptionSide = OptionSide.CALL

    def __post_init__(self):
        _require(math.isfinite(self.strike) and self.strike > 0,
                 f"strike must be > 0, got {self.strike}")
        _require(math.isfinite(self.maturity) and self.maturity > 0,
                 f"maturity must be > 0, got {self.maturity}")
        object.__setattr__(self, "side", OptionSide(self.side))


@dataclass(frozen=True)
class BarrierContract:
    """Knock-out option: vanilla terms plus barrier level, rebate and style"""
    vanilla: VanillaContract
    barrier_level: float
    rebate: float = 0.0
    style: BarrierStyle = BarrierStyle.UP_AND_OUT

    def __post_init__(self):
        _require(math.isfinite(self.barrier_level) and self.barrier_level > 0,
                 f"barrier level must be > 0, got {self.barrier_level}")
        _require(math.isfinite(self.rebate) and self.rebate >= 0,
                 f"rebate must be >= 0, got {self.rebate}")
        object.__setattr__(self, "style", BarrierStyle(self.style))

    @property
    def strike(self) -> float:
        return self.vanilla.strike

    @property
    def maturity(self) -> float:
        return self.vanilla.maturity

    def to_dict(self) -> dict:
        """Flat representation for reports"""
        return {
            "strike": self.strike,
            "maturity": self.maturity,
            "side": self.vanilla.side.value,
            "barrier_level": self.barrier_level,
            "rebate": self.rebate,
            "style": self.style.value,
        }
