"""
Command-line frontend: vanilla and barrier pricing, Monte Carlo, table
reproduction and method comparison

Exit codes: 0 success, 2 validation error, 3 numerical/singularity error.
Results go to stdout; diagnostics go to stderr.
"""
import sys
import json
import argparse
import logging
from contextlib import redirect_stderr, redirect_stdout
from typing import Callable, Dict, Optional, Sequence, TextIO

import pandas as pd

from analytics.barrier import price_barrier
from analytics.dividend_adjust import Method, adjust_params
from analytics.monte_carlo import McConfig, simulate_uo_call
from analytics.report import (
    VARY_PARAMETERS,
    AssumptionOverrides,
    compare_methods,
    reproduce_table,
)
from analytics.vanilla import price_vanilla
from config.settings import MC_CONFIG
from data.fixtures import TableId
from instruments.models import (
    BarrierContract,
    DividendSchedule,
    MarketState,
    OptionSide,
    VanillaContract,
)
from instruments.schedule import (
    load_schedule_file,
    normalize_schedule_with_diagnostics,
    parse_dividend_token,
)
from utils.errors import FixtureError, NumericalError, ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

FORMATS = ("pretty", "csv", "json")


# Argument types ---------------------------------------------------------------

def _method(value: str) -> Method:
    try:
        return Method.from_name(value)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e))


def _dividend(value: str):
    try:
        return parse_dividend_token(value)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e))


def _table_id(value: str) -> TableId:
    try:
        return TableId.from_name(value)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{value}'")
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {number}")
    return number


# Parser -----------------------------------------------------------------------

def _market_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("market and contract")
    group.add_argument("--spot", type=float, default=50.0, help="spot price S0")
    group.add_argument("--strike", type=float, default=50.0, help="strike K")
    group.add_argument("--rate", type=float, default=0.03, help="flat continuously-compounded rate r")
    group.add_argument("--vol", type=float, default=0.2, help="flat volatility sigma")
    group.add_argument("--maturity", type=float, default=1.0, help="maturity T in years")

    dividends = parent.add_argument_group("dividends")
    source = dividends.add_mutually_exclusive_group()
    source.add_argument("--div", type=_dividend, action="append", default=[],
                        metavar="T:AMOUNT", help="cash dividend, repeatable")
    source.add_argument("--div-file", metavar="PATH", help="CSV of time,amount lines")

    parent.add_argument("--format", choices=FORMATS, default="pretty", help="output format")
    return parent


def _barrier_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("barrier")
    group.add_argument("--barrier", type=float, default=65.0, help="up-and-out barrier level B")
    group.add_argument("--rebate", type=float, default=0.0, help="rebate R paid on knock-out")
    return parent


def _mc_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("monte carlo")
    group.add_argument("--paths", type=_positive_int, default=MC_CONFIG.get("paths", 1_000_000))
    group.add_argument("--seed", type=int, default=MC_CONFIG.get("seed", 20240607))
    group.add_argument("--steps-per-interval", type=_positive_int, default=None,
                       help="time steps per inter-dividend segment (default: ~daily)")
    group.add_argument("--steps-per-year", type=_positive_int,
                       default=MC_CONFIG.get("steps_per_year", 250))
    group.add_argument("--workers", type=_positive_int, default=MC_CONFIG.get("workers", 1))
    group.add_argument("--no-antithetic", dest="antithetic", action="store_false",
                       default=MC_CONFIG.get("antithetic", True))
    group.add_argument("--no-bridge", dest="bridge", action="store_false",
                       default=MC_CONFIG.get("bridge_correction", True))
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands"""
    parser = argparse.ArgumentParser(
        prog="divbarrier",
        description="Option pricing with discrete cash dividends",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    market, barrier, mc = _market_parent(), _barrier_parent(), _mc_parent()

    price = sub.add_parser("price", parents=[market], help="dividend-adjusted vanilla price")
    price.add_argument("--method", type=_method, default=Method.NONE)
    price.add_argument("--side", choices=[s.value for s in OptionSide], default=OptionSide.CALL.value)

    barrier_cmd = sub.add_parser("barrier", parents=[market, barrier], help="up-and-out call price")
    barrier_cmd.add_argument("--method", type=_method, default=Method.HYBRID_VA)

    sub.add_parser("mc", parents=[market, barrier, mc], help="Monte Carlo up-and-out call")

    table = sub.add_parser("table", parents=[mc], help="reproduce a published comparison table")
    table.add_argument("--id", dest="table_id", type=_table_id, required=True)
    table.add_argument("--times", type=float, nargs="+", help="dividend times for two-dividend tables")
    table.add_argument("--amounts", type=float, nargs="+", help="dividend amounts for T5")
    table.add_argument("--with-mc", action="store_true", help="also recompute the MC column")
    table.add_argument("--format", choices=FORMATS, default="pretty")

    compare = sub.add_parser("compare", parents=[market, barrier, mc],
                             help="all methods side by side against a benchmark")
    compare.add_argument("--methods", type=_method, nargs="+", default=list(Method))
    compare.add_argument("--vary", choices=VARY_PARAMETERS)
    compare.add_argument("--values", type=float, nargs="+")
    compare.add_argument("--benchmark", type=float, nargs="+",
                         help="benchmark prices; Monte Carlo is run when omitted")
    return parser


# Helpers ----------------------------------------------------------------------

def _schedule(args: argparse.Namespace) -> DividendSchedule:
    if args.div_file:
        raw = load_schedule_file(args.div_file)
    else:
        raw = DividendSchedule(tuple(args.div))
    result = normalize_schedule_with_diagnostics(raw, args.maturity)
    if result.dropped_after_maturity:
        logger.warning(f"{result.dropped_after_maturity} dividend(s) after maturity dropped")
    return result.schedule


def _market(args: argparse.Namespace) -> MarketState:
    return MarketState(spot=args.spot, rate=args.rate, vol=args.vol)


def _vanilla(args: argparse.Namespace, side: str = OptionSide.CALL.value) -> VanillaContract:
    return VanillaContract(strike=args.strike, maturity=args.maturity, side=OptionSide(side))


def _barrier_contract(args: argparse.Namespace) -> BarrierContract:
    return BarrierContract(vanilla=_vanilla(args), barrier_level=args.barrier, rebate=args.rebate)


def _mc_config(args: argparse.Namespace) -> McConfig:
    return McConfig(
        paths=args.paths,
        steps_per_interval=args.steps_per_interval,
        seed=args.seed,
        antithetic=args.antithetic,
        bridge_correction=args.bridge,
        workers=args.workers,
        steps_per_year=args.steps_per_year,
    )


def _render_frame(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == "csv":
        return frame.to_csv(index=False)
    return frame.to_string(index=False, float_format=lambda x: f"{x:.4f}") + "\n"


def _render_record(record: Dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    return _render_frame(pd.DataFrame([record]), fmt)


# Commands ---------------------------------------------------------------------

def _cmd_price(args: argparse.Namespace) -> str:
    market, schedule = _market(args), _schedule(args)
    contract = _vanilla(args, args.side)
    price = price_vanilla(args.method, market, contract, schedule)
    params = adjust_params(args.method, market, contract, schedule)
    return _render_record({
        "method": args.method.value,
        "side": contract.side.value,
        "price": price,
        "spot_adj": params.spot_adj,
        "strike_adj": params.strike_adj,
        "vol_adj": params.vol_adj,
    }, args.format)


def _cmd_barrier(args: argparse.Namespace) -> str:
    market, schedule = _market(args), _schedule(args)
    contract = _barrier_contract(args)
    price = price_barrier(args.method, market, contract, schedule)
    params = adjust_params(args.method, market, contract.vanilla, schedule)
    return _render_record({
        "method": args.method.value,
        "price": price,
        "spot_adj": params.spot_adj,
        "strike_adj": params.strike_adj,
        "vol_adj": params.vol_adj,
        "barrier": contract.barrier_level,
        "rebate": contract.rebate,
    }, args.format)


def _cmd_mc(args: argparse.Namespace) -> str:
    config = _mc_config(args)
    estimate = simulate_uo_call(_market(args), _barrier_contract(args), _schedule(args), config)
    record = estimate.to_dict()
    record.update({
        "seed": config.seed,
        "antithetic": config.antithetic,
        "bridge_correction": config.bridge_correction,
    })
    return _render_record(record, args.format)


def _cmd_table(args: argparse.Namespace) -> str:
    overrides = AssumptionOverrides(
        dividend_times=tuple(args.times) if args.times else None,
        dividend_amounts=tuple(args.amounts) if args.amounts else None,
    )
    comparison = reproduce_table(
        args.table_id,
        overrides=overrides,
        include_mc=args.with_mc,
        mc_config=_mc_config(args) if args.with_mc else None,
    )
    if args.format == "json":
        return json.dumps(comparison.to_dict(), indent=2) + "\n"
    if args.format == "csv":
        return comparison.to_frame().to_csv(index=False)

    lines = [f"{comparison.table_id.value}: {comparison.caption}", ""]
    lines.append(_render_frame(comparison.to_frame(), "pretty"))
    for name, report in comparison.metrics.items():
        printed = comparison.printed_metrics.get(name, {})
        lines.append(
            f"{name:<10} MAE {report.mae:.4f} (printed {printed.get('mae', float('nan')):.4f})  "
            f"RMSE {report.rmse:.4f} (printed {printed.get('rmse', float('nan')):.4f})"
        )
    for name, counts in comparison.tolerance.items():
        lines.append(
            f"{name:<10} rows within 1e-4: {counts['strict']}/{counts['rows']}, "
            f"within 1e-3: {counts['accepted']}/{counts['rows']}"
        )
    for message in comparison.discrepancies:
        lines.append(f"note: {message}")
    return "\n".join(lines) + "\n"


def _cmd_compare(args: argparse.Namespace) -> str:
    vary = None
    if args.vary:
        if not args.values:
            raise ValidationError("--vary needs --values")
        vary = (args.vary, args.values)
    elif args.values:
        raise ValidationError("--values needs --vary")

    comparison = compare_methods(
        _market(args), _barrier_contract(args), _schedule(args),
        methods=args.methods,
        vary=vary,
        benchmark=args.benchmark,
        mc_config=_mc_config(args),
    )
    if args.format == "json":
        return json.dumps(comparison.to_dict(), indent=2) + "\n"
    if args.format == "csv":
        return comparison.to_frame().to_csv(index=False)

    metrics = pd.DataFrame(
        [{"method": k, "mae": v.mae, "rmse": v.rmse} for k, v in comparison.metrics.items()]
    )
    return (
        f"benchmark: {comparison.benchmark_source}\n"
        + _render_frame(comparison.to_frame(), "pretty")
        + "\n"
        + _render_frame(metrics, "pretty")
    )


COMMANDS: Dict[str, Callable[[argparse.Namespace], str]] = {
    "price": _cmd_price,
    "barrier": _cmd_barrier,
    "mc": _cmd_mc,
    "table": _cmd_table,
    "compare": _cmd_compare,
}


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    """Parse `argv`, execute the subcommand and return the exit status"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()

    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse reports usage errors with status 2 and --help with 0
        return EXIT_VALIDATION if e.code not in (0, None) else EXIT_OK

    try:
        output = COMMANDS[args.command](args)
    except ValidationError as e:
        logger.error(f"❌ {args.command}: {e}")
        table_id = getattr(args, "table_id", None)
        hint = f" [--id {table_id.value}]" if isinstance(e, FixtureError) and table_id else ""
        print(f"error: {e}{hint}", file=stderr)
        return EXIT_VALIDATION
    except NumericalError as e:
        logger.error(f"❌ {args.command}: {e}")
        print(f"numerical error: {e}", file=stderr)
        return EXIT_NUMERICAL

    stdout.write(output)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
