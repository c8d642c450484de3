"""Swap engines.

Two execution models for the same pool:

* the continuous engine solves the invariant-flow relation
  G(k_f) - G(k_0) = ln(1 + dx/x_0) with G'(k) = 1/(factor(k) * k), using
  closed forms where the rule admits them and adaptive quadrature plus
  bracketed root finding otherwise;
* the discrete engine executes equal sub-swaps with per-swap fee
  reinvestment, the way on-chain constant-product pools do.

An ODE trajectory integrator provides an independent oracle for the
continuous model. All functions are pure: state in, state out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PoolState, TradeOutcome, TradeSpec
from .errors import DomainError, NonFinite, RangeError
from .fees import (
    SPLIT_MODES,
    ConstantFee,
    FeeRule,
    LinearFee,
    ZeroILFee,
    split_factor,
    zero_il_target_k,
)
from .numerics import find_root, integrate, rk4_step

DEFAULT_QUAD_REL_TOL = 1e-12
DEFAULT_ROOT_REL_TOL = 1e-14

ENGINE_MODES = ("continuous", "discrete")

#: Most trajectory samples kept per run; endpoints are always included.
MAX_TRAJECTORY_SAMPLES = 1024


@dataclass(frozen=True)
class EngineConfig:
    """Engine mode, fee rule, fee split, and numerical tolerances."""

    mode: str
    fee_rule: FeeRule
    split_mode: str = "balanced"
    quad_rel_tol: float = DEFAULT_QUAD_REL_TOL
    root_rel_tol: float = DEFAULT_ROOT_REL_TOL

    def __post_init__(self) -> None:
        if self.mode not in ENGINE_MODES:
            raise DomainError(f"unknown engine mode {self.mode!r}, expected one of {ENGINE_MODES}")
        if self.split_mode not in SPLIT_MODES:
            raise DomainError(
                f"unknown split mode {self.split_mode!r}, expected one of {SPLIT_MODES}"
            )
        if self.mode == "continuous" and not self.fee_rule.path_independent:
            raise DomainError("the continuous engine requires a path-independent fee rule")


@dataclass(frozen=True)
class Trajectory:
    """Sampled (s, x, y, k) path of one continuous swap; s is cumulative input."""

    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    k: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.s)
        if n < 1 or any(len(arr) != n for arr in (self.x, self.y, self.k)):
            raise DomainError("trajectory arrays must be non-empty and equally long")
        for arr in (self.s, self.x, self.y, self.k):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.s)

    def to_outcome(self) -> TradeOutcome:
        """Trade outcome implied by the first and last samples."""
        dx = float(self.x[-1] - self.x[0])
        dy_out = float(self.y[0] - self.y[-1])
        return TradeOutcome(
            x_f=float(self.x[-1]),
            y_f=float(self.y[-1]),
            k_f=float(self.k[-1]),
            dy_out=dy_out,
            p_marginal_f=float(self.y[-1] / self.x[-1]),
            p_effective=dy_out / dx if dx > 0.0 else 0.0,
        )


def _check_trade_size(dx: float) -> float:
    dx = float(dx)
    if not (math.isfinite(dx) and dx >= 0.0):
        raise DomainError(f"trade size must be finite and >= 0, got {dx!r}")
    return dx


def _require_path_independent(rule: FeeRule) -> None:
    if not rule.path_independent:
        raise DomainError("this operation requires a path-independent fee rule")


def _final_invariant(
    rule: FeeRule,
    k0: float,
    alpha: float,
    quad_rel_tol: float,
    root_rel_tol: float,
    solver: str,
) -> float:
    """Solve for the post-trade invariant at trade fraction alpha = dx/x0."""
    if solver == "auto":
        if isinstance(rule, ConstantFee):
            if rule.value == 0.0:
                return k0
            return k0 * math.exp(rule.value * math.log1p(alpha))
        if isinstance(rule, LinearFee):
            # G(k) = -k0_ref/(c*k), so the flow relation is solvable in closed form.
            denom = 1.0 - (rule.c * k0 / rule.k0_ref) * math.log1p(alpha)
            if denom <= 0.0:
                raise RangeError("linear fee factor reaches 1 before the trade completes")
            k_f = k0 / denom
            rule.fee_factor(k_f)  # re-validate the factor at the endpoint
            return k_f
        if isinstance(rule, ZeroILFee) and abs(k0 - rule.k0_ref) <= 1e-12 * rule.k0_ref:
            return zero_il_target_k(k0, alpha)
    elif solver != "quadrature":
        raise DomainError(f"unknown solver {solver!r}, expected 'auto' or 'quadrature'")

    target = math.log1p(alpha)

    if isinstance(rule, ZeroILFee):
        # Integrate in u = (k - k0_ref)/k0_ref: the factor is a function of
        # u with no cancellation, which keeps the integrand noise-free next
        # to the u^(-1/2) singularity at the reference.
        k0r = rule.k0_ref
        rule.fee_factor(k0)  # raises DomainError below the reference
        u0 = max((k0 - k0r) / k0r, 0.0)

        def integrand_u(u: float) -> float:
            a_u = u + math.sqrt(u * (1.0 + u))
            factor = 2.0 * a_u / (1.0 + 2.0 * a_u)
            return 1.0 / (factor * (1.0 + u))

        def growth_gap(k_f: float) -> float:
            u_f = (k_f - k0r) / k0r
            return integrate(integrand_u, u0, u_f, quad_rel_tol).value - target

    else:

        def integrand(k: float) -> float:
            factor = rule.fee_factor(k)
            if factor >= 1.0:
                raise RangeError(f"fee factor reached {factor} >= 1 at k={k}")
            return 1.0 / (factor * k)

        def growth_gap(k_f: float) -> float:
            return integrate(integrand, k0, k_f, quad_rel_tol).value - target

    # dk <= y ds pointwise, so the final invariant sits in [k0, k0*(1+alpha)];
    # the upper end is padded by a few ulps against quadrature round-off.
    hi = k0 * (1.0 + alpha) * (1.0 + 1e-13)
    return find_root(growth_gap, k0, hi, root_rel_tol).root


def swap_continuous(
    pool: PoolState,
    rule: FeeRule,
    dx: float,
    *,
    quad_rel_tol: float = DEFAULT_QUAD_REL_TOL,
    root_rel_tol: float = DEFAULT_ROOT_REL_TOL,
    solver: str = "auto",
) -> TradeOutcome:
    """Swap dx of token A into the pool under the continuous fee model.

    The final reserves are x_f = x0 + dx and y_f = k_f/x_f with k_f from
    the invariant-flow relation; dy_out = y0 - y_f is everything that
    leaves the pool (in this model all fee value accrues inside k).

    solver="quadrature" forces the general quadrature-plus-root path even
    for rules with a closed form, which is useful for cross-checking.
    """
    _require_path_independent(rule)
    dx = _check_trade_size(dx)
    x0, y0 = pool.x, pool.y
    k0 = x0 * y0
    if dx == 0.0:
        return TradeOutcome(x0, y0, k0, 0.0, y0 / x0, 0.0)
    alpha = dx / x0
    k_f = _final_invariant(rule, k0, alpha, quad_rel_tol, root_rel_tol, solver)
    x_f = x0 + dx
    y_f = k_f / x_f
    dy_out = y0 - y_f
    return TradeOutcome(x_f, y_f, k_f, dy_out, y_f / x_f, dy_out / dx)


def swap_discrete(
    pool: PoolState,
    rule: FeeRule,
    spec: TradeSpec,
    split_mode: str = "balanced",
) -> TradeOutcome:
    """Execute spec.n_splits equal sub-swaps with per-sub-swap fee reinvestment.

    Per sub-swap of size d at reserves (x, y): the combined factor is
    evaluated at the current state and decomposed via split_mode; the raw
    output solves (x + gamma1*d)*(y - dy_raw) = x*y; the trader receives
    gamma2*dy_raw; the pool keeps the full input and the output-side
    remainder, so x <- x + d and y <- y - gamma2*dy_raw.
    """
    if split_mode not in SPLIT_MODES:
        raise DomainError(f"unknown split mode {split_mode!r}, expected one of {SPLIT_MODES}")
    x, y = pool.x, pool.y
    dx = spec.dx
    dy_out = 0.0
    if dx > 0.0:
        delta = spec.sub_size
        for _ in range(spec.n_splits):
            factor = rule.combined_factor(x, y)
            if not (0.0 <= factor < 1.0):
                raise RangeError(f"combined factor {factor!r} outside [0, 1) at ({x}, {y})")
            split = split_factor(factor, split_mode)
            g1d = split.gamma1 * delta
            dy_raw = y * g1d / (x + g1d)
            paid = split.gamma2 * dy_raw
            y_next = y - paid
            if y_next <= 0.0:
                raise RangeError("sub-swap would drain the y reserve")
            x += delta
            y = y_next
            dy_out += paid
    k_f = x * y
    return TradeOutcome(x, y, k_f, dy_out, y / x, dy_out / dx if dx > 0.0 else 0.0)


def ode_trajectory(
    pool: PoolState,
    rule: FeeRule,
    dx: float,
    steps: int = 100_000,
) -> Trajectory:
    """RK4-integrate the continuous swap flow and return the sampled path.

    The flow in cumulative input s is x' = 1, y' = -(1 - factor(k))*y/x,
    k' = factor(k)*k/x. The final sample agrees with swap_continuous up
    to the integrator's O(steps**-4) error.
    """
    _require_path_independent(rule)
    dx = _check_trade_size(dx)
    if not isinstance(steps, (int, np.integer)) or steps < 1:
        raise DomainError(f"steps must be an integer >= 1, got {steps!r}")
    x0, y0 = pool.x, pool.y
    k0 = x0 * y0
    if dx == 0.0:
        return Trajectory(
            s=np.array([0.0]), x=np.array([x0]), y=np.array([y0]), k=np.array([k0])
        )

    def rhs(_s: float, state: np.ndarray) -> np.ndarray:
        x, y, k = state
        factor = rule.fee_factor(k)
        return np.array([1.0, -(1.0 - factor) * y / x, factor * k / x])

    h = dx / steps
    stride = max(1, math.ceil(steps / MAX_TRAJECTORY_SAMPLES))
    samples = [(0.0, x0, y0, k0)]
    state = np.array([x0, y0, k0])
    for i in range(1, steps + 1):
        state = rk4_step(rhs, (i - 1) * h, state, h)
        if not np.isfinite(state).all() or (state <= 0.0).any():
            raise NonFinite(f"trajectory left the valid region at step {i}")
        if i % stride == 0 or i == steps:
            samples.append((i * h, float(state[0]), float(state[1]), float(state[2])))
    arr = np.asarray(samples, dtype=float)
    return Trajectory(s=arr[:, 0], x=arr[:, 1], y=arr[:, 2], k=arr[:, 3])
