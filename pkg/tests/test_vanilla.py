import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from analytics import BsInputs, Method, adjust_params, bs_price, price_vanilla
from instruments import DividendSchedule, MarketState, OptionSide, VanillaContract
from utils import UnsupportedCombinationError, ValidationError


def quadrature_call(spot: float, strike: float, rate: float, vol: float, maturity: float) -> float:
    """Discounted lognormal call payoff integrated over the standard normal density"""
    drift = (rate - 0.5 * vol * vol) * maturity
    vol_sqrt_t = vol * math.sqrt(maturity)
    z_star = (math.log(strike / spot) - drift) / vol_sqrt_t

    def integrand(z):
        return (spot * math.exp(drift + vol_sqrt_t * z) - strike) * math.exp(-0.5 * z * z)

    value, _ = integrate.quad(integrand, z_star, z_star + 40.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    return math.exp(-rate * maturity) * value / math.sqrt(2.0 * math.pi)


class TestBsPrice:

    @pytest.mark.parametrize("spot,strike,vol,maturity", [
        (50.0, 50.0, 0.2, 1.0),
        (46.0, 50.0, 0.2, 1.0),
        (60.0, 50.0, 0.3, 0.5),
        (50.0, 55.0, 0.1, 2.0),
        (49.014888, 50.0, 0.4, 1.0),
    ])
    def test_against_quadrature(self, spot, strike, vol, maturity):
        inputs = BsInputs(spot, strike, 0.03, vol, maturity)
        assert bs_price(inputs) == pytest.approx(
            quadrature_call(spot, strike, 0.03, vol, maturity), abs=1e-8
        )

    def test_put_call_parity(self):
        inputs = BsInputs(50.0, 50.0, 0.03, 0.2, 1.0)
        call, put = bs_price(inputs, OptionSide.CALL), bs_price(inputs, OptionSide.PUT)
        assert call - put == pytest.approx(50.0 - 50.0 * math.exp(-0.03), rel=1e-10)

    def test_zero_vol_limit(self):
        inputs = BsInputs(50.0, 50.0, 0.03, 1e-6, 1.0)
        assert bs_price(inputs) == pytest.approx(50.0 - 50.0 * math.exp(-0.03), abs=1e-9)

    def test_side_accepts_string(self):
        inputs = BsInputs(50.0, 50.0, 0.03, 0.2, 1.0)
        assert bs_price(inputs, "put") == bs_price(inputs, OptionSide.PUT)

    @pytest.mark.parametrize("field", ["spot", "strike", "vol", "maturity"])
    def test_invariants(self, field):
        values = dict(spot=50.0, strike=50.0, rate=0.03, vol=0.2, maturity=1.0)
        values[field] = 0.0
        with pytest.raises(ValidationError):
            BsInputs(**values)


class TestPriceVanilla:

    @pytest.mark.parametrize("method", list(Method))
    def test_empty_schedule_matches_bs(self, method, market, call, no_dividends):
        expected = bs_price(BsInputs(50.0, 50.0, 0.03, 0.2, 1.0))
        assert price_vanilla(method, market, call, no_dividends) == expected

    def test_model1_call(self, market, call, mid_dividend):
        spot_adj = 50.0 - math.exp(-0.015)
        assert spot_adj == pytest.approx(49.014888, abs=1e-6)
        assert price_vanilla(Method.MODEL1, market, call, mid_dividend) == pytest.approx(
            quadrature_call(spot_adj, 50.0, 0.03, 0.2, 1.0), abs=1e-8
        )

    def test_hybrid_va_put_rejected(self, market, mid_dividend):
        put = VanillaContract(50.0, 1.0, OptionSide.PUT)
        with pytest.raises(UnsupportedCombinationError):
            price_vanilla(Method.HYBRID_VA, market, put, mid_dividend)

    @pytest.mark.parametrize("method", [m for m in Method if m is not Method.HYBRID_VA])
    def test_parity_per_method(self, method, market, mid_dividend):
        call = VanillaContract(50.0, 1.0, OptionSide.CALL)
        put = VanillaContract(50.0, 1.0, OptionSide.PUT)
        params = adjust_params(method, market, call, mid_dividend)
        difference = (price_vanilla(method, market, call, mid_dividend)
                      - price_vanilla(method, market, put, mid_dividend))
        assert difference == pytest.approx(
            params.spot_adj - params.strike_adj * math.exp(-0.03), rel=1e-10
        )

    def test_hybrid_above_model1_for_mid_life_dividend(self, mid_dividend):
        call = VanillaContract(50.0, 1.0)
        for spot in np.arange(46.0, 65.0, 2.0):
            market = MarketState(float(spot), 0.03, 0.2)
            assert (price_vanilla(Method.HYBRID, market, call, mid_dividend)
                    >= price_vanilla(Method.MODEL1, market, call, mid_dividend))

    @pytest.mark.parametrize("method", list(Method))
    def test_monotone_in_spot_and_strike(self, method, mid_dividend):
        spots = np.linspace(40.0, 70.0, 16)
        prices = [
            price_vanilla(method, MarketState(float(s), 0.03, 0.2), VanillaContract(50.0, 1.0), mid_dividend)
            for s in spots
        ]
        assert all(a <= b for a, b in zip(prices, prices[1:]))

        strikes = np.linspace(40.0, 70.0, 16)
        market = MarketState(50.0, 0.03, 0.2)
        prices = [
            price_vanilla(method, market, VanillaContract(float(k), 1.0), mid_dividend) for k in strikes
        ]
        assert all(a >= b for a, b in zip(prices, prices[1:]))


amounts = st.floats(min_value=0.0, max_value=4.0, allow_nan=False, allow_infinity=False)


@pytest.mark.property
class TestVanillaProperties:

    @given(first=amounts, second=amounts)
    def test_call_nonincreasing_in_dividend(self, first, second):
        low, high = sorted((first, second))
        market, call = MarketState(50.0, 0.03, 0.2), VanillaContract(50.0, 1.0)
        for method in Method:
            small = price_vanilla(method, market, call, DividendSchedule.from_pairs([(0.5, low)]))
            large = price_vanilla(method, market, call, DividendSchedule.from_pairs([(0.5, high)]))
            assert large <= small + 1e-12
