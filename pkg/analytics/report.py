"""
Error metrics and the harness that re-prices the published comparison
tables and side-by-side method comparisons
"""
import math
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from config.constants import ACCEPTED_TOLERANCE, METRIC_DISCREPANCY_THRESHOLD, STRICT_TOLERANCE
from data.fixtures import TableFixture, TableId, load_fixture
from instruments.models import (
    BarrierContract,
    Dividend,
    DividendSchedule,
    MarketState,
    OptionSide,
    VanillaContract,
)
from utils.errors import NeedsAssumptionError, ValidationError
from .barrier import price_barrier
from .dividend_adjust import Method
from .monte_carlo import McConfig, PriceEstimate, simulate_uo_call

logger = logging.getLogger(__name__)

# Fixture column -> method re-priced for it
REPRICED_COLUMNS = {"model1": Method.MODEL1, "hybrid_va": Method.HYBRID_VA}
PRINTED_COLUMNS = ("dai_chiu", "model1", "hybrid_va")


@dataclass(frozen=True)
class ErrorReport:
    """Per-row absolute errors with their maximum and root-mean-square"""
    per_row_abs_error: Tuple[float, ...]
    mae: float
    rmse: float

    def to_dict(self) -> dict:
        return {"mae": self.mae, "rmse": self.rmse}


def error_metrics(computed: Sequence[float], benchmark: Sequence[float]) -> ErrorReport:
    """Maximum absolute error and RMSE of `computed` against `benchmark`"""
    computed, benchmark = list(computed), list(benchmark)
    if len(computed) != len(benchmark):
        raise ValidationError(
            f"length mismatch: {len(computed)} computed vs {len(benchmark)} benchmark values"
        )
    if not computed:
        raise ValidationError("error metrics need at least one row")

    errors = tuple(abs(c - b) for c, b in zip(computed, benchmark))
    rmse = math.sqrt(math.fsum(e * e for e in errors) / len(errors))
    return ErrorReport(per_row_abs_error=errors, mae=max(errors), rmse=rmse)


@dataclass(frozen=True)
class AssumptionOverrides:
    """User-supplied dividend inputs for tables that do not state them"""
    dividend_times: Optional[Tuple[float, ...]] = None
    dividend_amounts: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True)
class RowComparison:
    param: float
    fixture: Dict[str, float]
    computed: Dict[str, float]
    abs_delta: Dict[str, float]

    def to_dict(self) -> dict:
        return {
            "param": self.param,
            "fixture": dict(self.fixture),
            "computed": dict(self.computed),
            "abs_delta": dict(self.abs_delta),
        }


@dataclass(frozen=True)
class TableComparison:
    """Recomputed table against its fixture"""
    table_id: TableId
    caption: str
    varying_parameter: str
    rows: Tuple[RowComparison, ...]
    metrics: Dict[str, ErrorReport]
    printed_metrics: Dict[str, Dict[str, float]]
    tolerance: Dict[str, Dict[str, int]]
    discrepancies: Tuple[str, ...] = ()
    assumptions: Dict[str, List[float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "table_id": self.table_id.value,
            "caption": self.caption,
            "varying_parameter": self.varying_parameter,
            "rows": [row.to_dict() for row in self.rows],
            "metrics": {name: report.to_dict() for name, report in self.metrics.items()},
            "printed_metrics": self.printed_metrics,
            "tolerance": self.tolerance,
            "discrepancies": list(self.discrepancies),
            "assumptions": self.assumptions,
        }

    def to_frame(self) -> pd.DataFrame:
        """One line per fixture row: fixture, computed and delta columns"""
        records = []
        for row in self.rows:
            record = {"param": row.param}
            record.update({f"fixture_{k}": v for k, v in row.fixture.items()})
            record.update({f"computed_{k}": v for k, v in row.computed.items()})
            record.update({f"abs_delta_{k}": v for k, v in row.abs_delta.items()})
            records.append(record)
        return pd.DataFrame.from_records(records)


def missing_assumptions(fixture: TableFixture, overrides: Optional[AssumptionOverrides]) -> List[str]:
    """Inputs a table needs that neither the fixture nor the overrides supply"""
    if fixture.dividend_count == 1:
        return []
    overrides = overrides or AssumptionOverrides()
    count = fixture.dividend_count
    missing = []
    if not overrides.dividend_times:
        missing.append(f"dividend times ({count} values, years)")
    elif len(overrides.dividend_times) != count:
        missing.append(f"dividend times: expected {count} values, got {len(overrides.dividend_times)}")
    if fixture.varying_parameter.name != "dividend_amount":
        if not overrides.dividend_amounts:
            missing.append(f"dividend amounts ({count} values, currency)")
        elif len(overrides.dividend_amounts) != count:
            missing.append(
                f"dividend amounts: expected {count} values, got {len(overrides.dividend_amounts)}"
            )
    return missing


def _row_inputs(fixture: TableFixture, param: float,
                overrides: Optional[AssumptionOverrides]
                ) -> Tuple[MarketState, BarrierContract, DividendSchedule]:
    """Market, contract and schedule for one fixture row"""
    d = fixture.defaults
    spot, vol = d.spot, d.vol
    if fixture.dividend_count == 1:
        times, amounts = d.dividend_times, d.dividend_amounts
    else:
        times = overrides.dividend_times
        amounts = overrides.dividend_amounts or ()

    name = fixture.varying_parameter.name
    if name == "spot":
        spot = param
    elif name == "vol":
        vol = param
    elif name == "dividend_amount":
        amounts = tuple(param for _ in times)
    elif name == "dividend_time":
        times = (param,)
    else:
        raise ValidationError(f"fixture {fixture.table_id.value} varies unknown parameter '{name}'")

    market = MarketState(spot=spot, rate=d.rate, vol=vol)
    contract = BarrierContract(
        vanilla=VanillaContract(strike=d.strike, maturity=d.maturity, side=OptionSide.CALL),
        barrier_level=d.barrier_level,
        rebate=d.rebate,
    )
    schedule = DividendSchedule(tuple(Dividend(t, a) for t, a in zip(times, amounts)))
    return market, contract, schedule


def _printed_discrepancies(fixture: TableFixture) -> List[str]:
    """Printed MAE/RMSE rows that disagree with the printed price columns"""
    messages = []
    benchmark = fixture.column("mc")
    for column in PRINTED_COLUMNS:
        printed = fixture.printed_metrics.get(column)
        if not printed:
            continue
        recomputed = error_metrics(fixture.column(column), benchmark)
        for metric in ("mae", "rmse"):
            if metric not in printed:
                continue
            value = getattr(recomputed, metric)
            if abs(printed[metric] - value) >= METRIC_DISCREPANCY_THRESHOLD - 1e-12:
                messages.append(
                    f"{fixture.table_id.value} {column} printed {metric.upper()} "
                    f"{printed[metric]:.4f} vs {value:.4f} recomputed from printed columns"
                )
    for message in messages:
        logger.warning(f"⚠️ {message}")
    return messages


def _tolerance_counts(rows: Sequence[RowComparison]) -> Dict[str, Dict[str, int]]:
    counts = {}
    for column in REPRICED_COLUMNS:
        deltas = [row.abs_delta[column] for row in rows]
        counts[column] = {
            "rows": len(deltas),
            "strict": sum(1 for x in deltas if x <= STRICT_TOLERANCE),
            "accepted": sum(1 for x in deltas if x <= ACCEPTED_TOLERANCE),
        }
    return counts


def reproduce_table(table_id: Union[TableId, str],
                    overrides: Optional[AssumptionOverrides] = None,
                    include_mc: bool = False,
                    mc_config: Optional[McConfig] = None,
                    fixtures_dir: Optional[str] = None) -> TableComparison:
    """Re-price a fixture table with Model1 and Hybrid VA (and optionally Monte Carlo)"""
    fixture = load_fixture(table_id, fixtures_dir)
    missing = missing_assumptions(fixture, overrides)
    if missing:
        raise NeedsAssumptionError(fixture.table_id.value, missing)
    if fixture.dividend_count == 1 and overrides and (overrides.dividend_times or overrides.dividend_amounts):
        logger.warning(f"Table {fixture.table_id.value} states its dividends; overrides ignored")

    rows = []
    for fixture_row in fixture.rows:
        market, contract, schedule = _row_inputs(fixture, fixture_row.param, overrides)
        fixture_values = {name: getattr(fixture_row, name) for name in ("mc", "dai_chiu", "model1", "hybrid_va")}

        computed = {
            column: price_barrier(method, market, contract, schedule)
            for column, method in REPRICED_COLUMNS.items()
        }
        if include_mc:
            estimate = simulate_uo_call(market, contract, schedule, mc_config)
            computed["mc"] = estimate.mean
            computed["mc_std_error"] = estimate.std_error

        abs_delta = {
            column: abs(computed[column] - fixture_values[column])
            for column in list(REPRICED_COLUMNS) + (["mc"] if include_mc else [])
        }
        rows.append(RowComparison(fixture_row.param, fixture_values, computed, abs_delta))

    benchmark = fixture.column("mc")
    metrics = {
        column: error_metrics([row.computed[column] for row in rows], benchmark)
        for column in REPRICED_COLUMNS
    }
    assumptions = {}
    if fixture.dividend_count > 1:
        assumptions["dividend_times"] = list(overrides.dividend_times)
        if overrides.dividend_amounts:
            assumptions["dividend_amounts"] = list(overrides.dividend_amounts)

    comparison = TableComparison(
        table_id=fixture.table_id,
        caption=fixture.caption,
        varying_parameter=fixture.varying_parameter.name,
        rows=tuple(rows),
        metrics=metrics,
        printed_metrics=fixture.printed_metrics,
        tolerance=_tolerance_counts(rows),
        discrepancies=tuple(_printed_discrepancies(fixture)),
        assumptions=assumptions,
    )
    logger.info(
        f"📊 Reproduced {fixture.table_id.value}: "
        + ", ".join(f"{k} MAE={v.mae:.4f} RMSE={v.rmse:.4f}" for k, v in metrics.items())
    )
    return comparison


# Method comparison ------------------------------------------------------------

VARY_PARAMETERS = ("spot", "strike", "vol", "rate", "barrier", "dividend_amount", "dividend_time")


@dataclass(frozen=True)
class MethodComparison:
    """Every method priced on the same scenarios against one benchmark column"""
    varying_parameter: Optional[str]
    params: Tuple[Optional[float], ...]
    prices: Dict[str, Tuple[float, ...]]
    benchmark: Tuple[float, ...]
    benchmark_source: str
    metrics: Dict[str, ErrorReport]
    benchmark_std_error: Tuple[float, ...] = ()

    def to_dict(self) -> dict:
        rows = []
        for i, param in enumerate(self.params):
            row = {
                "param": param,
                "benchmark": self.benchmark[i],
                "prices": {name: values[i] for name, values in self.prices.items()},
            }
            if self.benchmark_std_error:
                row["benchmark_std_error"] = self.benchmark_std_error[i]
            rows.append(row)
        return {
            "varying_parameter": self.varying_parameter,
            "benchmark_source": self.benchmark_source,
            "rows": rows,
            "metrics": {name: report.to_dict() for name, report in self.metrics.items()},
        }

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({"param": list(self.params), "benchmark": list(self.benchmark)})
        for name, values in self.prices.items():
            frame[name] = list(values)
        return frame


def _vary(name: str, value: float, market: MarketState, contract: BarrierContract,
          schedule: DividendSchedule) -> Tuple[MarketState, BarrierContract, DividendSchedule]:
    """Scenario with one parameter replaced"""
    if name == "spot":
        return market.with_spot(value), contract, schedule
    if name == "vol":
        return market.with_vol(value), contract, schedule
    if name == "rate":
        return MarketState(market.spot, value, market.vol), contract, schedule
    if name == "strike":
        vanilla = replace(contract.vanilla, strike=value)
        return market, replace(contract, vanilla=vanilla), schedule
    if name == "barrier":
        return market, replace(contract, barrier_level=value), schedule
    if name == "dividend_amount":
        return market, contract, DividendSchedule(tuple(Dividend(d.time, value) for d in schedule))
    if name == "dividend_time":
        if len(schedule) != 1:
            raise ValidationError("varying dividend_time needs exactly one dividend")
        return market, contract, DividendSchedule((Dividend(value, schedule.entries[0].amount),))
    raise ValidationError(f"cannot vary '{name}' (valid: {', '.join(VARY_PARAMETERS)})")


def compare_methods(market: MarketState, contract: BarrierContract, schedule: DividendSchedule,
                    methods: Optional[Sequence[Method]] = None,
                    vary: Optional[Tuple[str, Sequence[float]]] = None,
                    benchmark: Optional[Sequence[float]] = None,
                    mc_config: Optional[McConfig] = None) -> MethodComparison:
    """Price every method side by side and score each against a benchmark column"""
    methods = list(methods or Method)
    if vary:
        name, values = vary
        scenarios = [(v, *_vary(name, v, market, contract, schedule)) for v in values]
        if not scenarios:
            raise ValidationError(f"no values given for varying parameter '{name}'")
    else:
        name = None
        scenarios = [(None, market, contract, schedule)]

    std_errors: Tuple[float, ...] = ()
    if benchmark is not None:
        benchmark = tuple(float(b) for b in benchmark)
        if len(benchmark) != len(scenarios):
            raise ValidationError(
                f"--benchmark has {len(benchmark)} values for {len(scenarios)} scenario(s)"
            )
        source = "supplied"
    else:
        estimates: List[PriceEstimate] = [
            simulate_uo_call(m, c, s, mc_config) for _, m, c, s in scenarios
        ]
        benchmark = tuple(e.mean for e in estimates)
        std_errors = tuple(e.std_error for e in estimates)
        source = "monte-carlo"

    prices = {
        method.value: tuple(price_barrier(method, m, c, s) for _, m, c, s in scenarios)
        for method in methods
    }
    metrics = {key: error_metrics(values, benchmark) for key, values in prices.items()}

    return MethodComparison(
        varying_parameter=name,
        params=tuple(p for p, *_ in scenarios),
        prices=prices,
        benchmark=benchmark,
        benchmark_source=source,
        metrics=metrics,
        benchmark_std_error=std_errors,
    )
