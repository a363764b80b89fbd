"""
Black-Scholes vanilla prices and their dividend-adjusted variants
"""
import math
from dataclasses import dataclass

from instruments.models import DividendSchedule, MarketState, OptionSide, VanillaContract
from utils.errors import UnsupportedCombinationError, ValidationError
from utils.math_kernel import norm_cdf
from .dividend_adjust import Method, adjust_params


@dataclass(frozen=True)
class BsInputs:
    """Inputs of the Black-Scholes formula"""
    spot: float
    strike: float
    rate: float
    vol: float
    maturity: float

    def __post_init__(self):
        for name in ("spot", "strike", "vol", "maturity"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError(f"{name} must be > 0, got {value}")
        if not math.isfinite(self.rate):
            raise ValidationError(f"rate must be finite, got {self.rate}")

    @property
    def b1(self) -> float:
        vol_sqrt_t = self.vol * math.sqrt(self.maturity)
        return (math.log(self.spot / self.strike)
                + (self.rate + 0.5 * self.vol ** 2) * self.maturity) / vol_sqrt_t

    @property
    def b2(self) -> float:
        return self.b1 - self.vol * math.sqrt(self.maturity)


def bs_price(inputs: BsInputs, side: OptionSide = OptionSide.CALL) -> float:
    """Black-Scholes call or put"""
    side = OptionSide(side)
    b1, b2 = inputs.b1, inputs.b2
    discounted_strike = inputs.strike * math.exp(-inputs.rate * inputs.maturity)

    if side is OptionSide.CALL:
        return inputs.spot * norm_cdf(b1) - discounted_strike * norm_cdf(b2)
    # Parity-consistent put: K e^{-rT} N(-b2) - S N(-b1)
    return discounted_strike * norm_cdf(-b2) - inputs.spot * norm_cdf(-b1)


def price_vanilla(method: Method, market: MarketState, contract: VanillaContract,
                  schedule: DividendSchedule) -> float:
    """Dividend-adjusted European price under one method"""
    method = Method(method)
    if method is Method.HYBRID_VA and contract.side is OptionSide.PUT:
        raise UnsupportedCombinationError(
            "Hybrid VA has no put formula; puts need a dividend policy adjustment"
        )

    params = adjust_params(method, market, contract, schedule)
    inputs = BsInputs(
        spot=params.spot_adj,
        strike=params.strike_adj,
        rate=market.rate,
        vol=params.vol_adj,
        maturity=contract.maturity,
    )
    return bs_price(inputs, contract.side)
