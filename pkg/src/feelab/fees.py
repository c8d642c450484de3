"""Catalogue of fee rules.

A rule reports the combined factor alpha(x, y) in [0, 1): the share of
marginal trade value captured by the pool. Rules whose factor depends on
the reserves only through the product k = x*y keep swap outcomes
independent of how a trade is fragmented; the price-ratio rule is the
deliberate counterexample.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass
from typing import Callable, ClassVar

from .core import FeeSplit
from .errors import DomainError, RangeError

SPLIT_MODES = ("input_only", "balanced", "output_only")


def _check_invariant_arg(k: float) -> float:
    k = float(k)
    if not (0.0 < k < math.inf):
        raise DomainError(f"invariant must be positive and finite, got {k!r}")
    return k


class FeeRule(abc.ABC):
    """Combined-factor fee specification."""

    #: True when the factor is a function of k = x*y alone, which makes
    #: swap outcomes independent of trade fragmentation.
    path_independent: ClassVar[bool] = True

    @abc.abstractmethod
    def fee_factor(self, k: float) -> float:
        """Combined factor at invariant k (reserve-independent rules only)."""

    def combined_factor(self, x: float, y: float) -> float:
        """Combined factor at reserves (x, y)."""
        return self.fee_factor(float(x) * float(y))

    @abc.abstractmethod
    def describe(self) -> str:
        """Spec string in the same kind:param grammar `parse_fee` accepts."""


@dataclass(frozen=True)
class ConstantFee(FeeRule):
    """Flat combined factor: the classic fixed-percentage fee."""

    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if not (0.0 <= v < 1.0):
            raise RangeError(f"constant fee factor must lie in [0, 1), got {self.value!r}")
        object.__setattr__(self, "value", v)

    def fee_factor(self, k: float) -> float:
        _check_invariant_arg(k)
        return self.value

    def describe(self) -> str:
        return f"constant:{self.value!r}"


@dataclass(frozen=True)
class LinearFee(FeeRule):
    """Factor growing linearly with the invariant: c * k / k0_ref."""

    c: float
    k0_ref: float

    def __post_init__(self) -> None:
        c = float(self.c)
        if not (0.0 < c < math.inf):
            raise RangeError(f"slope must be positive and finite, got {self.c!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "k0_ref", _check_invariant_arg(self.k0_ref))

    def fee_factor(self, k: float) -> float:
        k = _check_invariant_arg(k)
        factor = self.c * k / self.k0_ref
        if factor >= 1.0:
            raise RangeError(f"linear fee factor reaches {factor} >= 1 at k={k}")
        return factor

    def describe(self) -> str:
        return f"linear:{self.c!r}:{self.k0_ref!r}"


@dataclass(frozen=True)
class ZeroILFee(FeeRule):
    """State-aware factor that cancels impermanent loss from a reference invariant.

    For k >= k0_ref the factor is 2a/(1+2a) where a is the trade fraction
    solving k = k0_ref*(1+a)^2/(1+2a). The factor is exactly zero at the
    reference and strictly increasing above it. Below the reference the
    rule is undefined and evaluation raises DomainError; a relative 1e-12
    band below k0_ref is treated as the reference itself to absorb
    round-off from discrete reserve updates.
    """

    k0_ref: float

    _BELOW_REF_GRACE: ClassVar[float] = 1e-12

    def __post_init__(self) -> None:
        object.__setattr__(self, "k0_ref", _check_invariant_arg(self.k0_ref))

    def fee_factor(self, k: float) -> float:
        k = _check_invariant_arg(k)
        k0 = self.k0_ref
        if k < k0:
            if k >= k0 * (1.0 - self._BELOW_REF_GRACE):
                return 0.0
            raise DomainError(
                f"zero-IL fee undefined below its reference invariant ({k} < {k0})"
            )
        u = (k - k0) / k0
        if u <= 0.0:
            return 0.0
        alpha = u + math.sqrt((1.0 + u) * u)
        return 2.0 * alpha / (1.0 + 2.0 * alpha)

    def describe(self) -> str:
        return f"zeroil:{self.k0_ref!r}"


@dataclass(frozen=True)
class PriceRatioFee(FeeRule):
    """Factor proportional to the price ratio y/x, clamped to [0, 0.999].

    Varies along curves of constant x*y, so it is deliberately sensitive
    to trade fragmentation. Serves as the negative control in tests.
    """

    base: float

    path_independent: ClassVar[bool] = False

    def __post_init__(self) -> None:
        b = float(self.base)
        if not (0.0 < b < math.inf):
            raise RangeError(f"base factor must be positive and finite, got {self.base!r}")
        object.__setattr__(self, "base", b)

    def fee_factor(self, k: float) -> float:
        raise DomainError("price-ratio fee depends on the reserves separately, not only on k")

    def combined_factor(self, x: float, y: float) -> float:
        x = float(x)
        y = float(y)
        if not (0.0 < x < math.inf and 0.0 < y < math.inf):
            raise DomainError(f"reserves must be positive and finite, got ({x!r}, {y!r})")
        return min(self.base * (y / x), 0.999)

    def describe(self) -> str:
        return f"priceratio:{self.base!r}"


@dataclass(frozen=True)
class CustomFee(FeeRule):
    """Wrap an arbitrary factor-of-invariant callable as a path-independent rule."""

    fn: Callable[[float], float]
    label: str = "custom"

    def fee_factor(self, k: float) -> float:
        k = _check_invariant_arg(k)
        v = float(self.fn(k))
        if not (0.0 <= v < 1.0):
            raise RangeError(f"custom fee factor {v!r} outside [0, 1) at k={k}")
        return v

    def describe(self) -> str:
        return self.label


def zero_il_alpha_of_t(t: float) -> float:
    """Trade fraction a satisfying (1+a)^2/(1+2a) = t, for t >= 1.

    This is the unique nonnegative root of a^2 + 2(1-t)a + (1-t) = 0,
    namely a = (t-1) + sqrt(t*(t-1)).
    """
    t = float(t)
    if not t >= 1.0:  # also rejects NaN
        raise DomainError(f"relative invariant must be >= 1, got {t!r}")
    if not math.isfinite(t):
        raise DomainError(f"relative invariant must be finite, got {t!r}")
    u = t - 1.0
    return u + math.sqrt(t * u)


def zero_il_target_k(k0: float, alpha: float) -> float:
    """Invariant after a fraction-alpha trade along the zero-IL trajectory from k0."""
    k0 = _check_invariant_arg(k0)
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha >= 0.0):
        raise DomainError(f"trade fraction must be finite and >= 0, got {alpha!r}")
    one_plus = 1.0 + alpha
    return k0 * one_plus * one_plus / (1.0 + 2.0 * alpha)


def split_factor(combined: float, mode: str) -> FeeSplit:
    """Decompose a combined factor into (gamma1, gamma2) retention factors.

    input_only puts the whole fee on the input leg, output_only on the
    output leg, balanced uses gamma1 = gamma2 = sqrt(1 - combined). In
    every mode gamma1*gamma2 = 1 - combined.
    """
    c = float(combined)
    if not (0.0 <= c < 1.0):
        raise RangeError(f"combined factor must lie in [0, 1), got {combined!r}")
    keep = 1.0 - c
    if mode == "input_only":
        return FeeSplit(keep, 1.0)
    if mode == "output_only":
        return FeeSplit(1.0, keep)
    if mode == "balanced":
        g = math.sqrt(keep)
        return FeeSplit(g, g)
    raise DomainError(f"unknown split mode {mode!r}, expected one of {SPLIT_MODES}")


def parse_fee(spec: str) -> FeeRule:
    """Parse the kind:param[:param] fee grammar used on the command line.

    Examples: constant:0.003, linear:0.003:10000, zeroil:10000,
    priceratio:0.003.
    """
    parts = str(spec).split(":")
    kind = parts[0].strip().lower()
    params = parts[1:]

    def floats(n: int) -> list[float]:
        if len(params) != n:
            raise DomainError(f"fee kind {kind!r} takes {n} parameter(s), got {len(params)}")
        try:
            return [float(p) for p in params]
        except ValueError as exc:
            raise DomainError(f"bad numeric fee parameter in {spec!r}") from exc

    if kind == "constant":
        return ConstantFee(*floats(1))
    if kind == "linear":
        return LinearFee(*floats(2))
    if kind == "zeroil":
        return ZeroILFee(*floats(1))
    if kind == "priceratio":
        return PriceRatioFee(*floats(1))
    raise DomainError(
        f"unknown fee kind {kind!r} (expected constant, linear, zeroil or priceratio)"
    )
