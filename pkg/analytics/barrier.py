"""
Closed-form up-and-out call and its composition with the dividend
adjustment methods

The closed form uses the generalized (cost-of-carry b) notation with the
binary switches fixed at phi = +1 (call) and eta = -1 (up barrier).
"""
import math
import logging
from dataclasses import dataclass
from typing import Optional

from config.constants import BARRIER_ROUNDING_SLACK
from instruments.models import (
    BarrierContract,
    BarrierStyle,
    DividendSchedule,
    MarketState,
    OptionSide,
)
from utils.errors import (
    AlreadyKnockedOutError,
    DomainError,
    NumericalError,
    UnsupportedCombinationError,
    ValidationError,
)
from utils.math_kernel import norm_cdf, scaled_norm_cdf
from .dividend_adjust import Method, adjust_params

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BarrierTerms:
    """Terms A, B, C, D, F of the up-and-out call and their intermediates"""
    term_a: float
    term_b: float
    term_c: float
    term_d: float
    term_f: float
    x1: float
    x2: float
    y1: float
    y2: float
    z: float
    mu: float
    lam: float

    @property
    def knock_out_sum(self) -> float:
        """A - B + C - D + F, the price when strike < barrier"""
        return self.term_a - self.term_b + self.term_c - self.term_d + self.term_f


@dataclass(frozen=True)
class BarrierQuote:
    """Closed-form price with diagnostics"""
    price: float
    knocked_out: bool = False
    clamped: bool = False
    terms: Optional[BarrierTerms] = None


def _check_inputs(spot: float, strike: float, barrier_level: float, rebate: float,
                  vol: float, maturity: float):
    for name, value in (("spot", spot), ("strike", strike), ("barrier level", barrier_level),
                        ("vol", vol), ("maturity", maturity)):
        if not (math.isfinite(value) and value > 0):
            raise ValidationError(f"{name} must be > 0, got {value}")
    if not (math.isfinite(rebate) and rebate >= 0):
        raise ValidationError(f"rebate must be >= 0, got {rebate}")


def uo_call_terms(spot: float, strike: float, barrier_level: float, rebate: float,
                  rate: float, carry: float, vol: float, maturity: float) -> BarrierTerms:
    """Evaluate the five terms of the up-and-out call"""
    _check_inputs(spot, strike, barrier_level, rebate, vol, maturity)
    if spot >= barrier_level:
        raise AlreadyKnockedOutError(spot, barrier_level)

    var = vol * vol
    vol_sqrt_t = vol * math.sqrt(maturity)
    mu = (carry - 0.5 * var) / var
    radicand = mu * mu + 2.0 * rate / var
    if radicand < 0:
        raise DomainError(f"lambda radicand is negative ({radicand}) for rate {rate}")
    lam = math.sqrt(radicand)

    h_over_s = barrier_level / spot
    log_h = math.log(h_over_s)
    spot_carry = spot * math.exp((carry - rate) * maturity)
    discounted_strike = strike * math.exp(-rate * maturity)

    x1 = math.log(spot / strike) / vol_sqrt_t + (1.0 + mu) * vol_sqrt_t
    x2 = math.log(spot / barrier_level) / vol_sqrt_t + (1.0 + mu) * vol_sqrt_t
    y1 = math.log(barrier_level ** 2 / (spot * strike)) / vol_sqrt_t + (1.0 + mu) * vol_sqrt_t
    y2 = log_h / vol_sqrt_t + (1.0 + mu) * vol_sqrt_t
    z = log_h / vol_sqrt_t + lam * vol_sqrt_t

    term_a = spot_carry * norm_cdf(x1) - discounted_strike * norm_cdf(x1 - vol_sqrt_t)
    term_b = spot_carry * norm_cdf(x2) - discounted_strike * norm_cdf(x2 - vol_sqrt_t)

    def _reflected(y: float) -> float:
        # eta = -1; powers of H/S are folded into Phi in log space
        first = spot_carry * scaled_norm_cdf(2.0 * (mu + 1.0) * log_h, -y)
        second = discounted_strike * scaled_norm_cdf(2.0 * mu * log_h, -y + vol_sqrt_t)
        return first - second

    term_c = _reflected(y1)
    term_d = _reflected(y2)

    if rebate == 0:
        term_f = 0.0
    else:
        term_f = rebate * (
            scaled_norm_cdf((mu + lam) * log_h, -z)
            + scaled_norm_cdf((mu - lam) * log_h, -z + 2.0 * lam * vol_sqrt_t)
        )

    return BarrierTerms(
        term_a=term_a, term_b=term_b, term_c=term_c, term_d=term_d, term_f=term_f,
        x1=x1, x2=x2, y1=y1, y2=y2, z=z, mu=mu, lam=lam,
    )


def uo_call_quote(spot: float, strike: float, barrier_level: float, rebate: float,
                  rate: float, carry: float, vol: float, maturity: float) -> BarrierQuote:
    """Up-and-out call price with knockout / clamp diagnostics"""
    _check_inputs(spot, strike, barrier_level, rebate, vol, maturity)
    if spot >= barrier_level:
        logger.info(f"Spot {spot} at or above barrier {barrier_level}: paying rebate {rebate}")
        return BarrierQuote(price=rebate, knocked_out=True)

    terms = uo_call_terms(spot, strike, barrier_level, rebate, rate, carry, vol, maturity)
    price = terms.term_f if strike >= barrier_level else terms.knock_out_sum

    if not math.isfinite(price):
        raise NumericalError(
            f"up-and-out call closed form is not finite ({price}) for S={spot} K={strike} "
            f"B={barrier_level} vol={vol} T={maturity}"
        )

    clamped = False
    if price < 0:
        if price < -BARRIER_ROUNDING_SLACK:
            logger.warning(f"Up-and-out call closed form returned {price}; clamping to 0")
        price, clamped = 0.0, True

    return BarrierQuote(price=price, clamped=clamped, terms=terms)


def uo_call_price(spot: float, strike: float, barrier_level: float, rebate: float,
                  rate: float, carry: float, vol: float, maturity: float) -> float:
    """Up-and-out call price"""
    return uo_call_quote(spot, strike, barrier_level, rebate, rate, carry, vol, maturity).price


def price_barrier(method: Method, market: MarketState, contract: BarrierContract,
                  schedule: DividendSchedule) -> float:
    """Up-and-out call with dividends handled by one adjustment method"""
    if contract.style is not BarrierStyle.UP_AND_OUT:
        raise UnsupportedCombinationError(f"barrier style {contract.style.value} is not supported")
    if contract.vanilla.side is not OptionSide.CALL:
        raise UnsupportedCombinationError("only up-and-out calls have a closed form here")

    params = adjust_params(method, market, contract.vanilla, schedule)
    # Barrier level and rebate are not adjusted; carry equals the rate
    return uo_call_price(
        spot=params.spot_adj,
        strike=params.strike_adj,
        barrier_level=contract.barrier_level,
        rebate=contract.rebate,
        rate=market.rate,
        carry=market.rate,
        vol=params.vol_adj,
        maturity=contract.maturity,
    )
