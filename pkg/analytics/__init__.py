"""
Analytics Module for the Dividend Barrier Pricer

This module provides:
- Dividend adjustment schemes (Model1, spot/strike VA, hybrid, hybrid VA)
- Black-Scholes vanilla and up-and-out call closed forms
- Monte Carlo benchmark engine
- Error metrics and table reproduction
"""

from .dividend_adjust import (
    WeightMode,
    Method,
    AdjustedParams,
    pv_dividends,
    forward_dividends,
    avg_vol_spot,
    avg_vol_strike,
    hybrid_vol,
    hybrid_epsilons,
    adjust_params,
)
from .vanilla import BsInputs, bs_price, price_vanilla
from .barrier import (
    BarrierTerms,
    BarrierQuote,
    uo_call_terms,
    uo_call_quote,
    uo_call_price,
    price_barrier,
)
from .monte_carlo import (
    McConfig,
    PriceEstimate,
    bridge_crossing_prob,
    simulate_uo_call,
)
from .report import (
    ErrorReport,
    AssumptionOverrides,
    RowComparison,
    TableComparison,
    MethodComparison,
    error_metrics,
    missing_assumptions,
    reproduce_table,
    compare_methods,
)

__all__ = [
    # Dividend adjustment
    "WeightMode",
    "Method",
    "AdjustedParams",
    "pv_dividends",
    "forward_dividends",
    "avg_vol_spot",
    "avg_vol_strike",
    "hybrid_vol",
    "hybrid_epsilons",
    "adjust_params",

    # Vanilla
    "BsInputs",
    "bs_price",
    "price_vanilla",

    # Barrier
    "BarrierTerms",
    "BarrierQuote",
    "uo_call_terms",
    "uo_call_quote",
    "uo_call_price",
    "price_barrier",

    # Monte Carlo
    "McConfig",
    "PriceEstimate",
    "bridge_crossing_prob",
    "simulate_uo_call",

    # Report
    "ErrorReport",
    "AssumptionOverrides",
    "RowComparison",
    "TableComparison",
    "MethodComparison",
    "error_metrics",
    "missing_assumptions",
    "reproduce_table",
    "compare_methods",
]
