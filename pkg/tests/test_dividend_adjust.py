import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from analytics import (
    Method,
    WeightMode,
    adjust_params,
    avg_vol_spot,
    avg_vol_strike,
    forward_dividends,
    hybrid_epsilons,
    hybrid_vol,
    pv_dividends,
)
from instruments import DividendSchedule, MarketState, VanillaContract, normalize_schedule
from utils import SingularityError, ValidationError

DISC = math.exp(-0.015)


class TestPvDividends:

    def test_uniform(self, mid_dividend):
        assert pv_dividends(mid_dividend, 0.03, 1.0) == pytest.approx(0.985112, abs=1e-6)
        assert pv_dividends(mid_dividend, 0.03, 1.0) == pytest.approx(DISC, rel=1e-15)

    def test_hybrid_split(self, mid_dividend):
        spot_side = pv_dividends(mid_dividend, 0.03, 1.0, WeightMode.HYBRID_SPOT)
        strike_side = pv_dividends(mid_dividend, 0.03, 1.0, WeightMode.HYBRID_STRIKE)
        assert spot_side == pytest.approx(0.5 * DISC, rel=1e-15)
        assert strike_side == pytest.approx(0.5 * DISC, rel=1e-15)
        assert spot_side + strike_side == pytest.approx(DISC, rel=1e-14)

    def test_empty(self, no_dividends):
        assert pv_dividends(no_dividends, 0.03, 1.0) == 0.0

    def test_forward_dividends(self, mid_dividend):
        assert forward_dividends(mid_dividend, 0.03, 1.0) == pytest.approx(math.exp(0.015), rel=1e-15)


class TestAveragedVols:

    def test_empty_returns_sigma(self, market, no_dividends):
        assert avg_vol_spot(market, no_dividends, 1.0) == 0.2
        assert avg_vol_strike(market, no_dividends, 1.0) == 0.2
        assert hybrid_vol(market, no_dividends, 1.0) == 0.2

    @pytest.mark.parametrize("vol", [0.1, 0.2, 0.3, 0.7, 1.3])
    def test_hybrid_empty_is_exactly_sigma(self, vol, no_dividends):
        market = MarketState(spot=50.0, rate=0.03, vol=vol)
        assert hybrid_vol(market, no_dividends, 1.0) == vol

    def test_spot_hybrid_single_dividend(self, market, mid_dividend):
        expected = 0.2 * math.sqrt((50 / (50 - 0.5 * DISC)) ** 2 * 0.5 + 0.5)
        assert avg_vol_spot(market, mid_dividend, 1.0, WeightMode.HYBRID_SPOT) == pytest.approx(
            expected, rel=1e-14
        )

    def test_strike_hybrid_single_dividend(self, market, mid_dividend):
        expected = 0.2 * math.sqrt(0.5 + (50 / (50 + 0.5 * DISC)) ** 2 * 0.5)
        assert avg_vol_strike(market, mid_dividend, 1.0, WeightMode.HYBRID_STRIKE) == pytest.approx(
            expected, rel=1e-14
        )

    def test_hybrid_vol_defaults(self, market, mid_dividend):
        vol_s = 0.2 * math.sqrt((50 / (50 - 0.5 * DISC)) ** 2 * 0.5 + 0.5)
        vol_k = 0.2 * math.sqrt(0.5 + (50 / (50 + 0.5 * DISC)) ** 2 * 0.5)
        assert hybrid_vol(market, mid_dividend, 1.0) == pytest.approx(vol_s * vol_k / 0.2, rel=1e-14)

    def test_two_dividend_interval_sum(self, market):
        schedule = DividendSchedule.from_pairs([(0.25, 1.0), (0.75, 2.0)])
        d1, d2 = math.exp(-0.03 * 0.25), 2.0 * math.exp(-0.03 * 0.75)
        expected_spot = 0.2 * math.sqrt(
            (50 / (50 - d1 - d2)) ** 2 * 0.25 + (50 / (50 - d2)) ** 2 * 0.5 + 0.25
        )
        expected_strike = 0.2 * math.sqrt(
            0.25 + (50 / (50 + d1)) ** 2 * 0.5 + (50 / (50 + d1 + d2)) ** 2 * 0.25
        )
        assert avg_vol_spot(market, schedule, 1.0) == pytest.approx(expected_spot, rel=1e-14)
        assert avg_vol_strike(market, schedule, 1.0) == pytest.approx(expected_strike, rel=1e-14)

    def test_dividend_at_maturity_has_zero_width_tail(self, market):
        schedule = DividendSchedule.from_pairs([(1.0, 1.0)])
        expected = 0.2 * math.sqrt(1.0 + (50 / (50 + math.exp(-0.03))) ** 2 * 0.0)
        assert avg_vol_strike(market, schedule, 1.0) == pytest.approx(expected, rel=1e-14)

    def test_all_zero_amounts(self, market):
        schedule = DividendSchedule.from_pairs([(0.5, 0.0)])
        assert avg_vol_spot(market, schedule, 1.0) == pytest.approx(0.2, rel=1e-15)
        assert avg_vol_strike(market, schedule, 1.0) == pytest.approx(0.2, rel=1e-15)

    def test_spot_singularity(self):
        market = MarketState(spot=1.0, rate=0.03, vol=0.2)
        with pytest.raises(SingularityError, match="spot does not cover"):
            avg_vol_spot(market, DividendSchedule.from_pairs([(0.5, 2.0)]), 1.0)

    def test_wrong_mode_rejected(self, market, mid_dividend):
        with pytest.raises(ValidationError):
            avg_vol_spot(market, mid_dividend, 1.0, WeightMode.HYBRID_STRIKE)
        with pytest.raises(ValidationError):
            avg_vol_strike(market, mid_dividend, 1.0, WeightMode.HYBRID_SPOT)

    def test_epsilons(self, market, mid_dividend):
        eps_s, eps_k = hybrid_epsilons(market, mid_dividend, 1.0)
        assert eps_s > 0 and eps_k > 0
        assert 0.2 * (1 + eps_s) * (1 - eps_k) == pytest.approx(
            hybrid_vol(market, mid_dividend, 1.0), rel=1e-14
        )


class TestAdjustParams:

    def test_model1(self, market, call, mid_dividend):
        params = adjust_params(Method.MODEL1, market, call, mid_dividend)
        assert params.spot_adj == pytest.approx(50 - DISC, rel=1e-15)
        assert params.strike_adj == 50.0
        assert params.vol_adj == 0.2

    def test_strike_va(self, market, call, mid_dividend):
        params = adjust_params(Method.STRIKE_VA, market, call, mid_dividend)
        assert params.spot_adj == 50.0
        assert params.strike_adj == pytest.approx(50 + math.exp(0.015), rel=1e-15)
        assert params.vol_adj == avg_vol_strike(market, mid_dividend, 1.0)

    def test_spot_va(self, market, call, mid_dividend):
        params = adjust_params(Method.SPOT_VA, market, call, mid_dividend)
        assert params.spot_adj == pytest.approx(50 - DISC, rel=1e-15)
        assert params.vol_adj == avg_vol_spot(market, mid_dividend, 1.0)

    def test_hybrid_and_hybrid_va(self, market, call, mid_dividend):
        hybrid = adjust_params(Method.HYBRID, market, call, mid_dividend)
        hybrid_va = adjust_params(Method.HYBRID_VA, market, call, mid_dividend)
        assert hybrid.spot_adj == pytest.approx(50 - 0.5 * DISC, rel=1e-15)
        assert hybrid.strike_adj == pytest.approx(50 + 0.5 * DISC * math.exp(0.03), rel=1e-15)
        assert hybrid.vol_adj == 0.2
        assert (hybrid_va.spot_adj, hybrid_va.strike_adj) == (hybrid.spot_adj, hybrid.strike_adj)
        assert hybrid_va.vol_adj == hybrid_vol(market, mid_dividend, 1.0)

    @pytest.mark.parametrize("method", list(Method))
    def test_empty_schedule_is_identity(self, method, market, call, no_dividends):
        params = adjust_params(method, market, call, no_dividends)
        assert (params.spot_adj, params.strike_adj, params.vol_adj) == (50.0, 50.0, 0.2)

    def test_dividends_after_maturity_ignored(self, market, call):
        late = DividendSchedule.from_pairs([(1.5, 3.0)])
        params = adjust_params(Method.MODEL1, market, call, late)
        assert params.spot_adj == 50.0

    def test_singularity_names_method(self, call):
        market = MarketState(spot=1.0, rate=0.03, vol=0.2)
        schedule = DividendSchedule.from_pairs([(0.5, 2.0)])
        with pytest.raises(SingularityError, match="Model1"):
            adjust_params(Method.MODEL1, market, call, schedule)
        with pytest.raises(SingularityError, match="Spot VA"):
            adjust_params(Method.SPOT_VA, market, call, schedule)

    def test_method_names(self):
        assert Method.from_name("hybrid-va") is Method.HYBRID_VA
        assert Method.from_name("Spot_VA") is Method.SPOT_VA
        with pytest.raises(ValidationError, match="unknown method"):
            Method.from_name("dai-chiu")


positive_amount = st.floats(min_value=0.01, max_value=5.0, allow_nan=False, allow_infinity=False)
dividend_time = st.floats(min_value=0.01, max_value=1.0, allow_nan=False, allow_infinity=False)
spots = st.floats(min_value=20.0, max_value=100.0, allow_nan=False, allow_infinity=False)
rates = st.floats(min_value=-0.02, max_value=0.1, allow_nan=False, allow_infinity=False)
vols = st.floats(min_value=0.05, max_value=1.0, allow_nan=False, allow_infinity=False)
schedules = st.lists(st.tuples(dividend_time, positive_amount), min_size=1, max_size=4)


@pytest.mark.property
class TestAdjustmentProperties:

    @given(pairs=schedules, rate=rates)
    def test_pv_split(self, pairs, rate):
        schedule = normalize_schedule(DividendSchedule.from_pairs(pairs), 1.0)
        total = pv_dividends(schedule, rate, 1.0)
        parts = (pv_dividends(schedule, rate, 1.0, WeightMode.HYBRID_SPOT)
                 + pv_dividends(schedule, rate, 1.0, WeightMode.HYBRID_STRIKE))
        assert parts == pytest.approx(total, rel=1e-14)

    @given(pairs=schedules, spot=spots, rate=rates, vol=vols)
    def test_hybrid_vol_identity(self, pairs, spot, rate, vol):
        market = MarketState(spot, rate, vol)
        schedule = normalize_schedule(DividendSchedule.from_pairs(pairs), 1.0)
        vol_s = avg_vol_spot(market, schedule, 1.0, WeightMode.HYBRID_SPOT)
        vol_k = avg_vol_strike(market, schedule, 1.0, WeightMode.HYBRID_STRIKE)
        assert hybrid_vol(market, schedule, 1.0) * vol == pytest.approx(vol_s * vol_k, rel=1e-14)

    @given(time=dividend_time, amount=positive_amount, spot=spots, rate=rates, vol=vols)
    def test_vol_ordering_single_dividend(self, time, amount, spot, rate, vol):
        assume(time < 1.0)
        market = MarketState(spot, rate, vol)
        schedule = DividendSchedule.from_pairs([(time, amount)])
        assert avg_vol_spot(market, schedule, 1.0) >= vol * (1 - 1e-15)
        assert avg_vol_strike(market, schedule, 1.0) <= vol * (1 + 1e-15)

    @given(pairs=schedules, spot=spots, rate=rates)
    def test_hybrid_shifts_bracket_escrowed(self, pairs, spot, rate):
        market = MarketState(spot, rate, 0.2)
        contract = VanillaContract(strike=50.0, maturity=1.0)
        schedule = normalize_schedule(DividendSchedule.from_pairs(pairs), 1.0)
        total = pv_dividends(schedule, rate, 1.0)
        params = adjust_params(Method.HYBRID, market, contract, schedule)
        assert spot - total - 1e-12 <= params.spot_adj <= spot
        assert 50.0 <= params.strike_adj <= 50.0 + total * math.exp(rate) + 1e-12
