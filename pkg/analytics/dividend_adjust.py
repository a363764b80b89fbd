"""
Dividend present values, interval-averaged volatilities and the
(spot', strike', vol') triple each adjustment method feeds into a
Black-Scholes-style formula
"""
import math
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from instruments.models import DividendSchedule, MarketState, VanillaContract
from instruments.schedule import normalize_schedule
from utils.errors import SingularityError, ValidationError

logger = logging.getLogger(__name__)


class WeightMode(str, Enum):
    """Per-dividend weights applied to discounted amounts"""
    UNIFORM = "uniform"
    HYBRID_SPOT = "hybrid-spot"      # (T - t_i) / T
    HYBRID_STRIKE = "hybrid-strike"  # t_i / T

    def weights(self, times: np.ndarray, maturity: float) -> np.ndarray:
        """Weight vector for dividend times"""
        if self is WeightMode.HYBRID_SPOT:
            return (maturity - times) / maturity
        if self is WeightMode.HYBRID_STRIKE:
            return times / maturity
        return np.ones_like(times)


class Method(str, Enum):
    """Dividend adjustment schemes, by CLI name"""
    NONE = "none"
    MODEL1 = "model1"
    SPOT_VA = "spot-va"
    STRIKE_VA = "strike-va"
    HYBRID = "hybrid"
    HYBRID_VA = "hybrid-va"

    @property
    def label(self) -> str:
        return _METHOD_LABELS[self]

    @classmethod
    def from_name(cls, name: str) -> "Method":
        """Look up a method by kebab-case name; case and underscores ignored"""
        key = name.strip().lower().replace("_", "-")
        for method in cls:
            if method.value == key:
                return method
        valid = ", ".join(m.value for m in cls)
        raise ValidationError(f"unknown method '{name}' (valid: {valid})")


_METHOD_LABELS = {
    Method.NONE: "No adjustment",
    Method.MODEL1: "Model1",
    Method.SPOT_VA: "Spot VA",
    Method.STRIKE_VA: "Strike VA",
    Method.HYBRID: "Hybrid",
    Method.HYBRID_VA: "Hybrid VA",
}


@dataclass(frozen=True)
class AdjustedParams:
    """Adjusted spot, strike and volatility for one method"""
    spot_adj: float
    strike_adj: float
    vol_adj: float

    def __post_init__(self):
        if not (self.spot_adj > 0 and self.strike_adj > 0 and self.vol_adj > 0):
            raise ValidationError(
                f"adjusted parameters must be positive, got "
                f"spot={self.spot_adj}, strike={self.strike_adj}, vol={self.vol_adj}"
            )


def _discounted_terms(schedule: DividendSchedule, rate: float, maturity: float,
                      mode: WeightMode) -> Tuple[np.ndarray, np.ndarray]:
    """Dividend times and w_i * d_i * exp(-r t_i)"""
    times = np.asarray(schedule.times, dtype=float)
    amounts = np.asarray(schedule.amounts, dtype=float)
    terms = mode.weights(times, maturity) * amounts * np.exp(-rate * times)
    return times, terms


def pv_dividends(schedule: DividendSchedule, rate: float, maturity: float,
                 mode: WeightMode = WeightMode.UNIFORM) -> float:
    """Sum of w_i * d_i * exp(-r t_i); 0 for an empty schedule"""
    _, terms = _discounted_terms(schedule, rate, maturity, mode)
    return math.fsum(terms.tolist())


def forward_dividends(schedule: DividendSchedule, rate: float, maturity: float) -> float:
    """Sum of d_i * exp(r (T - t_i)), the strike VA strike shift"""
    times = np.asarray(schedule.times, dtype=float)
    amounts = np.asarray(schedule.amounts, dtype=float)
    return math.fsum((amounts * np.exp(rate * (maturity - times))).tolist())


def avg_vol_spot(market: MarketState, schedule: DividendSchedule, maturity: float,
                 mode: WeightMode = WeightMode.UNIFORM) -> float:
    """
    Spot-side volatility averaged over the intervals (0,t1], ..., (tN,T]

    On (t_{j-1}, t_j] the local vol is scaled by S / (S - D_j) where D_j
    sums the weighted discounted dividends from j onwards; the last
    interval carries no remaining dividends.
    """
    if mode not in (WeightMode.UNIFORM, WeightMode.HYBRID_SPOT):
        raise ValidationError(f"avg_vol_spot does not take weight mode {mode.value}")
    if schedule.is_empty:
        return market.vol

    times, terms = _discounted_terms(schedule, market.rate, maturity, mode)
    remaining = np.cumsum(terms[::-1])[::-1]
    spot = market.spot
    if spot <= remaining[0]:
        raise SingularityError(
            f"spot does not cover discounted dividends: spot={spot}, "
            f"discounted dividends={remaining[0]}"
        )

    factors = (spot / (spot - remaining)) ** 2
    widths = np.diff(np.concatenate(([0.0], times)))
    variance_ratio = (math.fsum((factors * widths).tolist()) + (maturity - times[-1])) / maturity
    return market.vol * math.sqrt(variance_ratio)


def avg_vol_strike(market: MarketState, schedule: DividendSchedule, maturity: float,
                   mode: WeightMode = WeightMode.UNIFORM) -> float:
    """
    Strike-side volatility averaged over the intervals (0,t1], ..., (tN,T]

    On (t_j, t_{j+1}] the local vol is scaled by S / (S + D_j) where D_j
    sums the weighted discounted dividends up to and including j; the
    first interval carries none.
    """
    if mode not in (WeightMode.UNIFORM, WeightMode.HYBRID_STRIKE):
        raise ValidationError(f"avg_vol_strike does not take weight mode {mode.value}")
    if schedule.is_empty:
        return market.vol

    times, terms = _discounted_terms(schedule, market.rate, maturity, mode)
    paid = np.cumsum(terms)
    spot = market.spot

    factors = (spot / (spot + paid)) ** 2
    widths = np.diff(np.append(times, maturity))
    variance_ratio = (times[0] + math.fsum((factors * widths).tolist())) / maturity
    return market.vol * math.sqrt(variance_ratio)


def hybrid_vol(market: MarketState, schedule: DividendSchedule, maturity: float) -> float:
    """sigma_H = sigma (1 + eps_S)(1 - eps_K) = sigma_S * sigma_K / sigma"""
    if schedule.is_empty:
        return market.vol
    vol_spot = avg_vol_spot(market, schedule, maturity, WeightMode.HYBRID_SPOT)
    vol_strike = avg_vol_strike(market, schedule, maturity, WeightMode.HYBRID_STRIKE)
    return vol_spot * vol_strike / market.vol


def hybrid_epsilons(market: MarketState, schedule: DividendSchedule,
                    maturity: float) -> Tuple[float, float]:
    """(eps_S, eps_K) with sigma_S = sigma (1 + eps_S) and sigma_K = sigma (1 - eps_K)"""
    vol_spot = avg_vol_spot(market, schedule, maturity, WeightMode.HYBRID_SPOT)
    vol_strike = avg_vol_strike(market, schedule, maturity, WeightMode.HYBRID_STRIKE)
    return vol_spot / market.vol - 1.0, 1.0 - vol_strike / market.vol


def adjust_params(method: Method, market: MarketState, contract: VanillaContract,
                  schedule: DividendSchedule) -> AdjustedParams:
    """Apply one adjustment method to (S0, K, sigma)"""
    method = Method(method)
    maturity = contract.maturity
    schedule = normalize_schedule(schedule, maturity)
    spot, strike, vol, rate = market.spot, contract.strike, market.vol, market.rate

    if method is Method.NONE or schedule.is_empty:
        return AdjustedParams(spot, strike, vol)

    try:
        if method is Method.MODEL1:
            spot_adj = spot - pv_dividends(schedule, rate, maturity)
            strike_adj, vol_adj = strike, vol
        elif method is Method.SPOT_VA:
            spot_adj = spot - pv_dividends(schedule, rate, maturity)
            strike_adj = strike
            vol_adj = avg_vol_spot(market, schedule, maturity, WeightMode.UNIFORM)
        elif method is Method.STRIKE_VA:
            spot_adj = spot
            strike_adj = strike + forward_dividends(schedule, rate, maturity)
            vol_adj = avg_vol_strike(market, schedule, maturity, WeightMode.UNIFORM)
        else:
            spot_adj = spot - pv_dividends(schedule, rate, maturity, WeightMode.HYBRID_SPOT)
            strike_adj = strike + pv_dividends(
                schedule, rate, maturity, WeightMode.HYBRID_STRIKE
            ) * math.exp(rate * maturity)
            vol_adj = vol if method is Method.HYBRID else hybrid_vol(market, schedule, maturity)
    except SingularityError as e:
        raise SingularityError(f"{method.label}: {e}") from e

    if spot_adj <= 0:
        raise SingularityError(
            f"{method.label}: adjusted spot {spot_adj} is not positive "
            f"(dividends exceed spot {spot})"
        )

    logger.debug(f"{method.value}: spot'={spot_adj} strike'={strike_adj} vol'={vol_adj}")
    return AdjustedParams(spot_adj, strike_adj, vol_adj)
