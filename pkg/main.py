"""
Interactive pricer for barrier and vanilla options with discrete cash dividends
Run: streamlit run main.py
"""
import streamlit as st
import pandas as pd

from analytics import (
    Method,
    McConfig,
    adjust_params,
    hybrid_epsilons,
    price_barrier,
    price_vanilla,
    reproduce_table,
    simulate_uo_call,
    AssumptionOverrides,
)
from config import APP_CONFIG, FIXTURES_CONFIG, IS_DEBUG, MC_CONFIG
from data import TableId, load_fixture
from instruments import (
    BarrierContract,
    DividendSchedule,
    MarketState,
    OptionSide,
    VanillaContract,
    normalize_schedule_with_diagnostics,
    parse_schedule_text,
)
from utils import NumericalError, PricingError, ValidationError

st.set_page_config(
    page_title="Dividend Barrier Pricer",
    page_icon="📉",
    layout="wide"
)


@st.cache_data(show_spinner=False)
def _reproduce(table: str, times: tuple, amounts: tuple) -> dict:
    overrides = AssumptionOverrides(dividend_times=times or None, dividend_amounts=amounts or None)
    return reproduce_table(table, overrides=overrides).to_dict()


@st.cache_data(show_spinner=False)
def _fixture_frame(table: str) -> pd.DataFrame:
    return load_fixture(table).frame


@st.cache_data(show_spinner="Simulating paths...")
def _simulate(spot, rate, vol, strike, maturity, barrier, rebate, pairs, paths, seed, workers):
    market = MarketState(spot=spot, rate=rate, vol=vol)
    contract = BarrierContract(VanillaContract(strike, maturity), barrier, rebate)
    estimate = simulate_uo_call(
        market, contract, DividendSchedule.from_pairs(pairs),
        McConfig(paths=paths, seed=seed, workers=workers),
    )
    low, high = estimate.confidence_interval()
    return {**estimate.to_dict(), "ci_low": low, "ci_high": high}


st.title("📉 Dividend Barrier Pricer")
st.caption(f"v{APP_CONFIG['version']} · up-and-out calls and vanillas under discrete cash dividends")

# Sidebar inputs
with st.sidebar:
    st.markdown("### 📈 Market")
    spot = st.number_input("Spot S0", min_value=0.01, value=50.0, step=1.0)
    rate = st.number_input("Rate r", value=0.03, step=0.005, format="%.4f")
    vol = st.number_input("Volatility σ", min_value=0.0001, value=0.20, step=0.01, format="%.4f")

    st.markdown("### 📄 Contract")
    strike = st.number_input("Strike K", min_value=0.01, value=50.0, step=1.0)
    maturity = st.number_input("Maturity T (years)", min_value=0.01, value=1.0, step=0.25)
    barrier = st.number_input("Barrier B", min_value=0.01, value=65.0, step=1.0)
    rebate = st.number_input("Rebate R", min_value=0.0, value=0.0, step=0.5)

    st.markdown("### 💵 Dividends")
    schedule_text = st.text_area("time,amount per line", value="0.5,1.0", height=120)

    if IS_DEBUG:
        st.markdown("---")
        st.markdown("### 🔍 Debug Info")
        with st.expander("Configuration"):
            st.json({"app": APP_CONFIG, "mc": MC_CONFIG, "fixtures": FIXTURES_CONFIG})

try:
    market = MarketState(spot=spot, rate=rate, vol=vol)
    vanilla = VanillaContract(strike=strike, maturity=maturity)
    contract = BarrierContract(vanilla=vanilla, barrier_level=barrier, rebate=rebate)
    normalized = normalize_schedule_with_diagnostics(parse_schedule_text(schedule_text), maturity)
except ValidationError as e:
    st.error(f"❌ {e}")
    st.stop()

schedule = normalized.schedule
if normalized.dropped_after_maturity:
    st.warning(f"⚠️ {normalized.dropped_after_maturity} dividend(s) after maturity ignored")
if normalized.merged:
    st.info(f"💡 {normalized.merged} dividend(s) on the same date merged")

tab_pricer, tab_tables = st.tabs(["🧮 Barrier pricer", "📋 Comparison tables"])

with tab_pricer:
    records = []
    for method in Method:
        record = {"method": method.label}
        try:
            params = adjust_params(method, market, vanilla, schedule)
            record.update({
                "S adj": params.spot_adj,
                "K adj": params.strike_adj,
                "σ adj": params.vol_adj,
                "call": price_vanilla(method, market, vanilla, schedule),
                "up-and-out call": price_barrier(method, market, contract, schedule),
            })
            try:
                put = VanillaContract(strike, maturity, OptionSide.PUT)
                record["put"] = price_vanilla(method, market, put, schedule)
            except PricingError:
                record["put"] = None
        except NumericalError as e:
            record["note"] = str(e)
        records.append(record)

    st.markdown("#### Closed-form prices by method")
    st.dataframe(pd.DataFrame(records).round(4), use_container_width=True, hide_index=True)

    if not schedule.is_empty:
        try:
            eps_s, eps_k = hybrid_epsilons(market, schedule, maturity)
            st.caption(f"Hybrid VA volatility: σ(1 + ε_S)(1 − ε_K) with ε_S = {eps_s:.6f}, ε_K = {eps_k:.6f}")
        except NumericalError:
            pass

    st.markdown("---")
    st.markdown("#### 🎲 Monte Carlo benchmark")
    col1, col2, col3, col4 = st.columns(4)
    with col1:
        paths = st.number_input("Paths", min_value=1_000, value=100_000, step=10_000)
    with col2:
        seed = st.number_input("Seed", value=int(MC_CONFIG["seed"]), step=1)
    with col3:
        workers = st.number_input("Workers", min_value=1, value=int(MC_CONFIG["workers"]), step=1)
    with col4:
        st.write("")
        run_mc = st.button("Run simulation", use_container_width=True, type="primary")

    if run_mc:
        if spot >= barrier:
            st.info(f"Spot is at or above the barrier; the option pays the rebate {rebate:.4f}")
        else:
            estimate = _simulate(spot, rate, vol, strike, maturity, barrier, rebate,
                                 tuple(schedule.to_pairs()), int(paths), int(seed), int(workers))
            low, high = estimate["ci_low"], estimate["ci_high"]
            m1, m2, m3 = st.columns(3)
            m1.metric("MC price", f"{estimate['mean']:.4f}", f"± {estimate['std_error']:.4f}")
            m2.metric("Knock-out probability", f"{estimate['knockout_fraction']:.2%}")
            m3.metric("95% interval", f"{low:.4f} – {high:.4f}")

with tab_tables:
    table = st.selectbox("Table", [t.value for t in TableId])
    st.dataframe(_fixture_frame(table), use_container_width=True, hide_index=True)

    times, amounts = (), ()
    if table in (TableId.T5.value, TableId.T6.value):
        st.info("💡 This table does not state its dividend inputs; supply them to re-price it")
        c1, c2 = st.columns(2)
        with c1:
            times_text = st.text_input("Dividend times", value="0.25, 0.75")
        if table == TableId.T5.value:
            with c2:
                amounts_text = st.text_input("Dividend amounts", value="1.0, 1.0")
        else:
            amounts_text = ""
        try:
            times = tuple(float(x) for x in times_text.split(",") if x.strip())
            amounts = tuple(float(x) for x in amounts_text.split(",") if x.strip())
        except ValueError:
            st.error("❌ Times and amounts must be comma-separated numbers")
            st.stop()

    if st.button("Re-price table", use_container_width=True):
        try:
            result = _reproduce(table, times, amounts)
        except ValidationError as e:
            st.error(f"❌ {e}")
            st.stop()

        rows = [
            {"param": r["param"], **{f"{k} (fixture)": v for k, v in r["fixture"].items()},
             **{f"{k} (computed)": v for k, v in r["computed"].items()}}
            for r in result["rows"]
        ]
        st.dataframe(pd.DataFrame(rows).round(4), use_container_width=True, hide_index=True)

        metric_rows = []
        for name, values in result["metrics"].items():
            printed = result["printed_metrics"].get(name, {})
            counts = result["tolerance"][name]
            metric_rows.append({
                "method": name,
                "MAE": values["mae"],
                "MAE printed": printed.get("mae"),
                "RMSE": values["rmse"],
                "RMSE printed": printed.get("rmse"),
                "rows ≤ 1e-3": f"{counts['accepted']}/{counts['rows']}",
            })
        st.dataframe(pd.DataFrame(metric_rows).round(4), use_container_width=True, hide_index=True)

        for message in result["discrepancies"]:
            st.warning(f"⚠️ {message}")
