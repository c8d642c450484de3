"""Command line front end.

Each subcommand reproduces one experiment as a deterministic numeric
series (CSV, JSON, or an aligned text table). Exit codes: 0 success,
2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .analysis import (
    SeriesTable,
    fee_field_grid,
    il_curve,
    impermanent_loss,
    price_curve,
    splitting_error,
    zero_il_fee_curve,
)
from .core import PoolState, TradeSpec
from .engine import EngineConfig, ENGINE_MODES, swap_continuous, swap_discrete
from .errors import DomainError, NoBracket, NonConvergence, NonFinite, RangeError
from .fees import SPLIT_MODES, ZeroILFee, parse_fee, zero_il_alpha_of_t

FORMATS = ("csv", "json", "table")

_CONFIG_KEYS = {
    "x0", "y0", "dx", "fee", "engine", "split", "format", "out", "n",
    "baseline", "alpha_max", "points", "x_min", "x_max", "y_min", "y_max",
    "resolution", "k0", "t_max", "kstar",
}

_DEFAULT_FEE = "constant:0.003"


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read config file {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise DomainError("config file must hold a JSON object")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise DomainError(f"unknown config keys: {unknown}")
    return data


def _opt(args: argparse.Namespace, cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def _float_opt(args, cfg, key, default) -> float:
    try:
        return float(_opt(args, cfg, key, default))
    except (TypeError, ValueError) as exc:
        raise DomainError(f"option {key!r} must be a number") from exc


def _int_opt(args, cfg, key, default) -> int:
    raw = _opt(args, cfg, key, default)
    try:
        value = int(raw)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"option {key!r} must be an integer") from exc
    return value


def _int_list_opt(args, cfg, key, default) -> list[int]:
    raw = _opt(args, cfg, key, default)
    if isinstance(raw, (list, tuple)):
        items = list(raw)
    else:
        items = [p for p in str(raw).split(",") if p.strip()]
    try:
        values = [int(p) for p in items]
    except (TypeError, ValueError) as exc:
        raise DomainError(f"option {key!r} must be a comma list of integers") from exc
    if not values:
        raise DomainError(f"option {key!r} must not be empty")
    return values


def _float_list_opt(args, cfg, key, default) -> list[float]:
    raw = _opt(args, cfg, key, default)
    if isinstance(raw, (list, tuple)):
        items = list(raw)
    else:
        items = [p for p in str(raw).split(",") if p.strip()]
    try:
        values = [float(p) for p in items]
    except (TypeError, ValueError) as exc:
        raise DomainError(f"option {key!r} must be a comma list of numbers") from exc
    if not values:
        raise DomainError(f"option {key!r} must not be empty")
    return values


def _choice_opt(args, cfg, key, default, choices) -> str:
    value = str(_opt(args, cfg, key, default))
    if value not in choices:
        raise DomainError(f"option {key!r} must be one of {choices}, got {value!r}")
    return value


def _pool(args, cfg) -> PoolState:
    return PoolState(_float_opt(args, cfg, "x0", 100.0), _float_opt(args, cfg, "y0", 100.0))


def _engine_config(args, cfg) -> EngineConfig:
    rule = parse_fee(_opt(args, cfg, "fee", _DEFAULT_FEE))
    mode = _choice_opt(args, cfg, "engine", "continuous", ENGINE_MODES)
    split = _choice_opt(args, cfg, "split", "balanced", SPLIT_MODES)
    return EngineConfig(mode, rule, split)


def _alpha_grid(args, cfg) -> list[float]:
    alpha_max = _float_opt(args, cfg, "alpha_max", 0.5)
    points = _int_opt(args, cfg, "points", 50)
    if not (math.isfinite(alpha_max) and alpha_max > 0.0):
        raise DomainError(f"alpha_max must be positive, got {alpha_max!r}")
    if points < 1:
        raise DomainError(f"points must be >= 1, got {points!r}")
    return [alpha_max * (i + 1) / points for i in range(points)]


def _emit(table: SeriesTable, args, cfg) -> int:
    fmt = _choice_opt(args, cfg, "format", os.environ.get("FEELAB_FORMAT", "csv"), FORMATS)
    if fmt == "csv":
        text = table.to_csv()
    elif fmt == "json":
        text = table.to_json()
    else:
        text = table.to_table()
    out = _opt(args, cfg, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_swap(args) -> int:
    cfg = _load_config(args.config)
    pool = _pool(args, cfg)
    config = _engine_config(args, cfg)
    dx = _float_opt(args, cfg, "dx", 10.0)
    n = _int_opt(args, cfg, "n", 1)
    if config.mode == "discrete":
        outcome = swap_discrete(pool, config.fee_rule, TradeSpec(dx, n), config.split_mode)
    else:
        outcome = swap_continuous(pool, config.fee_rule, dx)
    report = impermanent_loss(pool, outcome)
    table = SeriesTable(
        "swap",
        ["x_f", "y_f", "k_f", "dy_out", "p_marginal_f", "p_effective",
         "v_hold", "v_pool", "il_abs", "il_rel"],
        [[outcome.x_f, outcome.y_f, outcome.k_f, outcome.dy_out,
          outcome.p_marginal_f, outcome.p_effective,
          report.v_hold, report.v_pool, report.il_abs, report.il_rel]],
        {"x0": pool.x, "y0": pool.y, "dx": dx, "fee": config.fee_rule.describe(),
         "engine": config.mode, "split": config.split_mode, "n": n},
    )
    return _emit(table, args, cfg)


def cmd_split_test(args) -> int:
    cfg = _load_config(args.config)
    pool = _pool(args, cfg)
    config = _engine_config(args, cfg)
    dx = _float_opt(args, cfg, "dx", 10.0)
    ns = _int_list_opt(args, cfg, "n", "1,2,5,10,100,1000")
    baseline = _choice_opt(args, cfg, "baseline", "atomic", ("atomic", "continuous"))
    table = splitting_error(pool, config, dx, ns, baseline)
    return _emit(table, args, cfg)


def cmd_price_curve(args) -> int:
    cfg = _load_config(args.config)
    pool = _pool(args, cfg)
    config = _engine_config(args, cfg)
    n = _int_opt(args, cfg, "n", 1)
    table = price_curve(pool, config, _alpha_grid(args, cfg), n)
    return _emit(table, args, cfg)


def cmd_il_curve(args) -> int:
    cfg = _load_config(args.config)
    pool = _pool(args, cfg)
    config = _engine_config(args, cfg)
    n = _int_opt(args, cfg, "n", 1)
    table = il_curve(pool, config, _alpha_grid(args, cfg), n)
    return _emit(table, args, cfg)


def cmd_fee_field(args) -> int:
    cfg = _load_config(args.config)
    rule = parse_fee(_opt(args, cfg, "fee", _DEFAULT_FEE))
    x_range = (_float_opt(args, cfg, "x_min", 50.0), _float_opt(args, cfg, "x_max", 200.0))
    y_range = (_float_opt(args, cfg, "y_min", 50.0), _float_opt(args, cfg, "y_max", 200.0))
    resolution = _int_opt(args, cfg, "resolution", 21)
    table = fee_field_grid(rule, x_range, y_range, resolution)
    return _emit(table, args, cfg)


def cmd_zeroil_curve(args) -> int:
    cfg = _load_config(args.config)
    k0 = _float_opt(args, cfg, "k0", 10_000.0)
    t_max = _float_opt(args, cfg, "t_max", 1.5)
    points = _int_opt(args, cfg, "points", 100)
    if not (math.isfinite(t_max) and t_max >= 1.0):
        raise DomainError(f"t_max must be >= 1, got {t_max!r}")
    if points < 2:
        raise DomainError(f"points must be >= 2, got {points!r}")
    ts = [1.0 + (t_max - 1.0) * i / (points - 1) for i in range(points)]
    table = zero_il_fee_curve(k0, ts)
    return _emit(table, args, cfg)


def cmd_no_universal(args) -> int:
    cfg = _load_config(args.config)
    k_star = _float_opt(args, cfg, "kstar", 10_100.0)
    k0_list = _float_list_opt(args, cfg, "k0", "10000,9000")
    rows = []
    for k0 in k0_list:
        if not (0.0 < k0 < k_star):
            raise DomainError(f"every k0 must satisfy 0 < k0 < kstar, got {k0!r}")
        alpha = zero_il_alpha_of_t(k_star / k0)
        rows.append([k0, alpha, ZeroILFee(k0).fee_factor(k_star)])
    required = [row[2] for row in rows]
    conflict = max(required) - min(required) > 1e-12 * max(required)
    if conflict:
        print(
            "CONFLICT: distinct start states require distinct fee factors "
            f"at k={k_star:g} (spread {max(required) - min(required):.6g})",
            file=sys.stderr,
        )
    table = SeriesTable(
        "no-universal",
        ["k0", "alpha", "phi_required"],
        rows,
        {"kstar": k_star, "conflict": conflict},
    )
    return _emit(table, args, cfg)


def _add_output_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="JSON file supplying defaults for any option")
    p.add_argument("--format", choices=FORMATS, default=None,
                   help="output format (default csv; FEELAB_FORMAT overrides)")
    p.add_argument("--out", default=None, help="write the series to this path instead of stdout")


def _add_pool_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x0", type=float, default=None, help="initial reserve of token A (default 100)")
    p.add_argument("--y0", type=float, default=None, help="initial reserve of token B (default 100)")


def _add_engine_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fee", default=None,
                   help="fee spec kind:param[:param], e.g. constant:0.003, linear:0.003:10000, "
                        "zeroil:10000, priceratio:0.003")
    p.add_argument("--engine", choices=ENGINE_MODES, default=None)
    p.add_argument("--split", choices=SPLIT_MODES, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="feelab",
        description="Constant-product pool simulator with state-dependent fees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("swap", help="run one trade and report outcome plus impermanent loss")
    _add_pool_options(p)
    _add_engine_options(p)
    p.add_argument("--dx", type=float, default=None, help="total input of token A (default 10)")
    p.add_argument("--n", type=int, default=None, help="sub-swaps for the discrete engine (default 1)")
    _add_output_options(p)
    p.set_defaults(func=cmd_swap)

    p = sub.add_parser("split-test", help="final-invariant deviation across fragment counts")
    _add_pool_options(p)
    _add_engine_options(p)
    p.add_argument("--dx", type=float, default=None)
    p.add_argument("--n", default=None, help="comma list of fragment counts (default 1,2,5,10,100,1000)")
    p.add_argument("--baseline", choices=("atomic", "continuous"), default=None)
    _add_output_options(p)
    p.set_defaults(func=cmd_split_test)

    p = sub.add_parser("price-curve", help="relative effective price over a trade-size grid")
    _add_pool_options(p)
    _add_engine_options(p)
    p.add_argument("--alpha-max", dest="alpha_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    _add_output_options(p)
    p.set_defaults(func=cmd_price_curve)

    p = sub.add_parser("il-curve", help="impermanent loss over a trade-size grid")
    _add_pool_options(p)
    _add_engine_options(p)
    p.add_argument("--alpha-max", dest="alpha_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    _add_output_options(p)
    p.set_defaults(func=cmd_il_curve)

    p = sub.add_parser("fee-field", help="combined fee factor sampled on a reserve grid")
    p.add_argument("--fee", default=None)
    p.add_argument("--x-min", dest="x_min", type=float, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--y-min", dest="y_min", type=float, default=None)
    p.add_argument("--y-max", dest="y_max", type=float, default=None)
    p.add_argument("--resolution", type=int, default=None)
    _add_output_options(p)
    p.set_defaults(func=cmd_fee_field)

    p = sub.add_parser("zeroil-curve", help="zero-IL fee factor versus relative invariant")
    p.add_argument("--k0", type=float, default=None, help="reference invariant (default 10000)")
    p.add_argument("--t-max", dest="t_max", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    _add_output_options(p)
    p.set_defaults(func=cmd_zeroil_curve)

    p = sub.add_parser("no-universal", help="conflicting zero-IL factor requirements at one target")
    p.add_argument("--kstar", type=float, default=None, help="common target invariant (default 10100)")
    p.add_argument("--k0", default=None, help="comma list of start invariants (default 10000,9000)")
    _add_output_options(p)
    p.set_defaults(func=cmd_no_universal)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv, run the selected subcommand, and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (DomainError, RangeError) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except (NonConvergence, NonFinite, NoBracket) as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
