"""Domain types for a two-token constant-product pool.

Everything here is an immutable value: operations are pure functions, so
instances can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


def _positive_finite(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 < value < math.inf):  # rejects NaN, Inf and non-positive
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PoolState:
    """Reserves (x, y) of the pool; both strictly positive."""

    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _positive_finite("reserve x", self.x))
        object.__setattr__(self, "y", _positive_finite("reserve y", self.y))
        if not math.isfinite(self.x * self.y):
            raise DomainError("reserve product x*y overflows")

    @property
    def k(self) -> float:
        """Product of reserves."""
        return self.x * self.y


def invariant(pool: PoolState) -> float:
    """Product of reserves x*y."""
    return pool.x * pool.y


def marginal_price(pool: PoolState) -> float:
    """Instantaneous exchange rate y/x."""
    return pool.y / pool.x


@dataclass(frozen=True)
class TradeSpec:
    """A total input dx of token A, executed as n_splits equal sub-trades."""

    dx: float
    n_splits: int = 1

    def __post_init__(self) -> None:
        dx = float(self.dx)
        if not (math.isfinite(dx) and dx >= 0.0):
            raise DomainError(f"trade size must be finite and >= 0, got {self.dx!r}")
        if not isinstance(self.n_splits, int) or self.n_splits < 1:
            raise DomainError(f"n_splits must be an integer >= 1, got {self.n_splits!r}")
        object.__setattr__(self, "dx", dx)

    @property
    def sub_size(self) -> float:
        return self.dx / self.n_splits


@dataclass(frozen=True)
class FeeSplit:
    """Input/output retention factors (gamma1, gamma2), each in (0, 1]."""

    gamma1: float
    gamma2: float

    def __post_init__(self) -> None:
        for name, g in (("gamma1", self.gamma1), ("gamma2", self.gamma2)):
            g = float(g)
            if not (0.0 < g <= 1.0):
                raise DomainError(f"{name} must lie in (0, 1], got {g!r}")
            object.__setattr__(self, name, g)

    @property
    def combined_factor(self) -> float:
        """The fee share 1 - gamma1*gamma2 this split implements."""
        return 1.0 - self.gamma1 * self.gamma2


@dataclass(frozen=True)
class TradeOutcome:
    """Final pool state and trader-facing quantities of one swap."""

    x_f: float
    y_f: float
    k_f: float
    dy_out: float
    p_marginal_f: float
    p_effective: float
