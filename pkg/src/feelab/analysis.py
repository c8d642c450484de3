"""Experiment harnesses: impermanent loss, splitting tests, price and fee
curves, and the conflicting-requirements witness for universal zero-IL fees.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import PoolState, TradeOutcome, TradeSpec
from .engine import EngineConfig, swap_continuous, swap_discrete
from .errors import DomainError
from .fees import FeeRule, ZeroILFee

BASELINES = ("atomic", "continuous")


def format_float(value: float) -> str:
    """Render a float with 17 significant digits (exact double round-trip)."""
    return f"{float(value):.17g}"


@dataclass(frozen=True)
class ILReport:
    """Pool position vs hold portfolio, valued at the post-trade marginal price."""

    v_hold: float
    v_pool: float
    il_abs: float
    il_rel: float


def impermanent_loss(pool0: PoolState, outcome: TradeOutcome) -> ILReport:
    """Absolute and relative impermanent loss of one trade.

    Both portfolios are valued at p = y_f/x_f, the pool's own post-trade
    marginal price.
    """
    p = outcome.p_marginal_f
    v_hold = p * pool0.x + pool0.y
    v_pool = p * outcome.x_f + outcome.y_f
    il_abs = v_pool - v_hold
    return ILReport(v_hold, v_pool, il_abs, il_abs / v_hold)


@dataclass
class SeriesTable:
    """Rectangular numeric table with a name and free-form metadata."""

    name: str
    columns: list[str]
    rows: list[list[float]]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.columns:
            raise DomainError("a series table needs at least one column")
        width = len(self.columns)
        clean: list[list[float]] = []
        for row in self.rows:
            if len(row) != width:
                raise DomainError(f"row {row!r} does not match {width} columns")
            values = [float(v) for v in row]
            if not all(math.isfinite(v) for v in values):
                raise DomainError(f"non-finite entry in row {row!r}")
            clean.append(values)
        self.rows = clean

    def column(self, label: str) -> list[float]:
        idx = self.columns.index(label)
        return [row[idx] for row in self.rows]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines.extend(",".join(format_float(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        obj = {"name": self.name, "columns": self.columns, "rows": self.rows, "meta": self.meta}
        return json.dumps(obj, indent=2) + "\n"

    def to_table(self) -> str:
        width = max(24, max(len(c) for c in self.columns) + 2)
        lines = [f"# {self.name}"]
        lines.append("".join(c.rjust(width) for c in self.columns))
        for row in self.rows:
            lines.append("".join(format_float(v).rjust(width) for v in row))
        return "\n".join(lines) + "\n"


def run_split(pool0: PoolState, config: EngineConfig, dx: float, n: int) -> TradeOutcome:
    """Run one total trade of size dx as n equal fragments under the configured engine.

    The continuous engine applies the solver sequentially to each
    fragment; the discrete engine delegates to its own sub-swap loop.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"fragment count must be an integer >= 1, got {n!r}")
    if config.mode == "discrete":
        return swap_discrete(pool0, config.fee_rule, TradeSpec(float(dx), int(n)), config.split_mode)
    pool = pool0
    delta = float(dx) / n
    dy_total = 0.0
    outcome = None
    for _ in range(int(n)):
        outcome = swap_continuous(
            pool,
            config.fee_rule,
            delta,
            quad_rel_tol=config.quad_rel_tol,
            root_rel_tol=config.root_rel_tol,
        )
        dy_total += outcome.dy_out
        pool = PoolState(outcome.x_f, outcome.y_f)
    dx = float(dx)
    return TradeOutcome(
        outcome.x_f,
        outcome.y_f,
        outcome.k_f,
        dy_total,
        outcome.p_marginal_f,
        dy_total / dx if dx > 0.0 else 0.0,
    )


def splitting_error(
    pool0: PoolState,
    config: EngineConfig,
    dx: float,
    n_values: Iterable[int],
    baseline: str = "atomic",
) -> SeriesTable:
    """Relative deviation of the final invariant across fragment counts.

    baseline="atomic" measures |k_f(N) - k_f(1)|/k_f(1) against the
    single-transaction run of the same engine. baseline="continuous"
    measures against the continuous-model solution instead, which is the
    natural reference when quantifying how fast a discrete engine
    approaches the fragmentation-independent limit.
    """
    ns = sorted({int(n) for n in n_values})
    if not ns:
        raise DomainError("n_values must not be empty")
    if baseline == "atomic":
        k_ref = run_split(pool0, config, dx, 1).k_f
    elif baseline == "continuous":
        k_ref = swap_continuous(
            pool0,
            config.fee_rule,
            dx,
            quad_rel_tol=config.quad_rel_tol,
            root_rel_tol=config.root_rel_tol,
        ).k_f
    else:
        raise DomainError(f"unknown baseline {baseline!r}, expected one of {BASELINES}")
    rows = []
    for n in ns:
        k_n = run_split(pool0, config, dx, n).k_f
        rows.append([float(n), abs(k_n - k_ref) / k_ref])
    meta = {
        "fee": config.fee_rule.describe(),
        "engine": config.mode,
        "split": config.split_mode,
        "x0": pool0.x,
        "y0": pool0.y,
        "dx": float(dx),
        "baseline": baseline,
    }
    return SeriesTable("split-test", ["n_splits", "rel_error"], rows, meta)


def _run_trade(pool0: PoolState, config: EngineConfig, dx: float, n_splits: int) -> TradeOutcome:
    if config.mode == "discrete":
        return swap_discrete(pool0, config.fee_rule, TradeSpec(dx, n_splits), config.split_mode)
    return swap_continuous(
        pool0,
        config.fee_rule,
        dx,
        quad_rel_tol=config.quad_rel_tol,
        root_rel_tol=config.root_rel_tol,
    )


def relative_effective_price(
    pool0: PoolState, config: EngineConfig, dx: float, n_splits: int = 1
) -> float:
    """Trader's realized rate divided by the no-fee rate for the same dx."""
    dx = float(dx)
    if not (math.isfinite(dx) and dx > 0.0):
        raise DomainError(f"relative effective price needs dx > 0, got {dx!r}")
    ideal = pool0.y * dx / (pool0.x + dx)
    outcome = _run_trade(pool0, config, dx, n_splits)
    return outcome.dy_out / ideal


def price_curve(
    pool0: PoolState, config: EngineConfig, alphas: Sequence[float], n_splits: int = 1
) -> SeriesTable:
    """Relative effective price over a grid of trade fractions alpha = dx/x0."""
    rows = []
    for alpha in sorted(float(a) for a in alphas):
        rows.append([alpha, relative_effective_price(pool0, config, alpha * pool0.x, n_splits)])
    meta = {
        "fee": config.fee_rule.describe(),
        "engine": config.mode,
        "split": config.split_mode,
        "x0": pool0.x,
        "y0": pool0.y,
        "n_splits": n_splits,
    }
    return SeriesTable("price-curve", ["alpha", "p_rel"], rows, meta)


def il_curve(
    pool0: PoolState, config: EngineConfig, alphas: Sequence[float], n_splits: int = 1
) -> SeriesTable:
    """Absolute and relative impermanent loss over a grid of trade fractions."""
    rows = []
    for alpha in sorted(float(a) for a in alphas):
        outcome = _run_trade(pool0, config, alpha * pool0.x, n_splits)
        report = impermanent_loss(pool0, outcome)
        rows.append([alpha, report.il_abs, report.il_rel])
    meta = {
        "fee": config.fee_rule.describe(),
        "engine": config.mode,
        "split": config.split_mode,
        "x0": pool0.x,
        "y0": pool0.y,
        "n_splits": n_splits,
    }
    return SeriesTable("il-curve", ["alpha", "il_abs", "il_rel"], rows, meta)


def fee_field_grid(
    rule: FeeRule,
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    resolution: int,
) -> SeriesTable:
    """Sample the combined factor on a uniform reserve grid.

    Each row carries k = x*y as well, so plotting tools can overlay the
    constant-product hyperbolas without recomputation.
    """
    if not isinstance(resolution, (int, np.integer)) or resolution < 2:
        raise DomainError(f"resolution must be an integer >= 2, got {resolution!r}")
    for name, (lo, hi) in (("x_range", x_range), ("y_range", y_range)):
        if not (0.0 < float(lo) < float(hi) < math.inf):
            raise DomainError(f"{name} must satisfy 0 < lo < hi, got {(lo, hi)!r}")
    xs = np.linspace(float(x_range[0]), float(x_range[1]), int(resolution))
    ys = np.linspace(float(y_range[0]), float(y_range[1]), int(resolution))
    rows = []
    for yv in ys:
        for xv in xs:
            rows.append([float(xv), float(yv), rule.combined_factor(xv, yv), float(xv) * float(yv)])
    meta = {"fee": rule.describe(), "resolution": int(resolution)}
    return SeriesTable("fee-field", ["x", "y", "alpha", "k"], rows, meta)


def zero_il_fee_curve(k0: float, t_values: Sequence[float]) -> SeriesTable:
    """The zero-IL fee factor across relative invariants t = k/k0 >= 1."""
    rule = ZeroILFee(k0)
    rows = []
    for t in t_values:
        t = float(t)
        if not t >= 1.0:
            raise DomainError(f"relative invariant must be >= 1, got {t!r}")
        rows.append([t, rule.fee_factor(t * rule.k0_ref)])
    return SeriesTable("zeroil-curve", ["t", "phi"], rows, {"k0": float(k0)})


def universal_fee_conflict(k_star: float, k0_a: float, k0_b: float) -> tuple[float, float]:
    """Required zero-IL factors at a common target invariant, for two start states.

    Reaching k_star with zero impermanent loss from reference k0 pins the
    factor at k_star; distinct references pin distinct values, so no
    single factor-of-invariant can serve every start state.
    """
    k_star = float(k_star)
    values = []
    for name, k0 in (("k0_a", k0_a), ("k0_b", k0_b)):
        k0 = float(k0)
        if not (0.0 < k0 < k_star):
            raise DomainError(f"{name} must satisfy 0 < k0 < k_star, got {k0!r}")
        values.append(ZeroILFee(k0).fee_factor(k_star))
    return values[0], values[1]
