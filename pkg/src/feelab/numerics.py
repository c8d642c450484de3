"""Self-contained numerical kernels: adaptive quadrature, bracketed root
finding, and classical fixed-step RK4.

No domain knowledge lives here; the routines operate on caller-supplied
callables and plain floats or numpy arrays, and they are re-entrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NoBracket, NonConvergence, NonFinite

_EPS = 2.220446049250313e-16

MAX_SUBDIVISION_DEPTH = 60
MAX_ROOT_ITERATIONS = 200


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float
    evaluations: int


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int


class _CountingEval:
    """Wrap an integrand: count calls and turn NaN/Inf/zero-division into NonFinite."""

    __slots__ = ("fn", "count")

    def __init__(self, fn: Callable[[float], float]) -> None:
        self.fn = fn
        self.count = 0

    def __call__(self, x: float) -> float:
        self.count += 1
        try:
            v = float(self.fn(x))
        except ZeroDivisionError as exc:
            raise NonFinite(f"integrand not finite at {x!r}") from exc
        if not math.isfinite(v):
            raise NonFinite(f"integrand not finite at {x!r}")
        return v


def _probe(fn: Callable[[float], float], x: float) -> float | None:
    """Evaluate fn(x), returning None when the value does not exist or is not finite."""
    try:
        v = float(fn(x))
    except (ZeroDivisionError, OverflowError, ValueError):
        return None
    return v if math.isfinite(v) else None


def _simpson_panel(func, a, fa, m, fm, b, fb, s_whole, tol, depth):
    """Recursive Simpson subdivision with Richardson extrapolation.

    Returns (value, error_estimate). A panel is accepted when the classic
    |S2 - S1| <= 15*tol test passes or the panel has shrunk to the float
    grid; otherwise it splits, halving the error budget per side.
    """
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = func(lm)
    frm = func(rm)
    s_left = (m - a) * (fa + 4.0 * flm + fm) / 6.0
    s_right = (b - m) * (fm + 4.0 * frm + fb) / 6.0
    s_two = s_left + s_right
    diff = s_two - s_whole
    # Second test: the difference sits at the rounding floor of the panel
    # sums, so further subdivision can only chase noise.
    if (
        abs(diff) <= 15.0 * tol
        or abs(diff) <= 30.0 * _EPS * (abs(s_left) + abs(s_right))
        or lm <= a
        or rm >= b
    ):
        return s_two + diff / 15.0, abs(diff) / 15.0
    if depth >= MAX_SUBDIVISION_DEPTH:
        raise NonConvergence(
            f"quadrature did not converge within subdivision depth {MAX_SUBDIVISION_DEPTH}"
        )
    v1, e1 = _simpson_panel(func, a, fa, lm, flm, m, fm, s_left, 0.5 * tol, depth + 1)
    v2, e2 = _simpson_panel(func, m, fm, rm, frm, b, fb, s_right, 0.5 * tol, depth + 1)
    return v1 + v2, e1 + e2


def _adaptive(func, lo, hi, f_lo, f_hi, rel_tol):
    m = 0.5 * (lo + hi)
    f_m = func(m)
    s_whole = (hi - lo) * (f_lo + 4.0 * f_m + f_hi) / 6.0
    scale = max(abs(s_whole), 1e-300)
    value = err = 0.0
    # One retry when the coarse magnitude estimate was badly off.
    for _ in range(2):
        value, err = _simpson_panel(func, lo, f_lo, m, f_m, hi, f_hi, s_whole, rel_tol * scale, 0)
        new_scale = max(abs(value), 1e-300)
        if 0.25 * scale <= new_scale <= 4.0 * scale:
            break
        scale = new_scale
    return value, err


def integrate(
    f: Callable[[float], float], a: float, b: float, rel_tol: float = 1e-12
) -> QuadratureResult:
    """Integrate f over [a, b] with adaptive Simpson quadrature.

    The left endpoint may carry an integrable singularity of the
    1/sqrt(x - a) type: when f(a) is not finite the integral is computed
    under the substitution x = a + v*v, which turns such a singularity
    into a bounded integrand. The value at v = 0 is then taken from the
    first representable point above a, so the singular limit is used
    instead of 0 * inf.

    Raises NonFinite for NaN/Inf in the interior, NonConvergence when the
    subdivision depth budget runs out.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or a > b:
        raise DomainError(f"bad integration interval [{a!r}, {b!r}]")
    if not (math.isfinite(rel_tol) and rel_tol > 0.0):
        raise DomainError(f"rel_tol must be positive, got {rel_tol!r}")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)

    f_a = _probe(f, a)
    if f_a is not None:
        counting = _CountingEval(f)
        f_b = counting(b)
        value, err = _adaptive(counting, a, b, f_a, f_b, rel_tol)
        return QuadratureResult(value, err, counting.count + 1)

    # Singular (or undefined) left endpoint: substitute x = a + v*v. The
    # weight uses the offset that is actually representable next to a, so
    # a 1/sqrt(x - a) singularity evaluates to its finite limit instead of
    # rounding to 0 * inf at the float resolution of a.
    width = b - a
    x_min = math.nextafter(a, math.inf)

    def transformed(v: float) -> float:
        x = a + v * v
        if x <= a:
            x = x_min
        return 2.0 * math.sqrt(x - a) * f(x)

    counting = _CountingEval(transformed)
    v_hi = math.sqrt(width)
    g_zero = counting(0.0)
    g_hi = counting(v_hi)
    value, err = _adaptive(counting, 0.0, v_hi, g_zero, g_hi, rel_tol)
    return QuadratureResult(value, err, counting.count)


def find_root(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-14,
    max_iter: int = MAX_ROOT_ITERATIONS,
) -> RootResult:
    """Find a root of g inside [lo, hi] with Brent's bracketed hybrid method.

    g(lo) and g(hi) must have opposite signs (an endpoint that is exactly
    zero is returned as the root). Inverse-quadratic and secant steps are
    safeguarded by bisection, so the returned root always lies inside the
    initial bracket and is accurate to about rel_tol relative to its
    magnitude.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise DomainError(f"bad bracket [{lo!r}, {hi!r}]")
    if not (math.isfinite(rel_tol) and rel_tol > 0.0):
        raise DomainError(f"rel_tol must be positive, got {rel_tol!r}")

    def geval(x: float) -> float:
        v = float(g(x))
        if not math.isfinite(v):
            raise NonFinite(f"root function not finite at {x!r}")
        return v

    fa = geval(lo)
    if fa == 0.0:
        return RootResult(lo, 0.0, 0)
    fb = geval(hi)
    if fb == 0.0:
        return RootResult(hi, 0.0, 0)
    if (fa > 0.0) == (fb > 0.0):
        raise NoBracket(f"g({lo}) = {fa} and g({hi}) = {fb} have the same sign")

    # Floor keeps the tolerance positive for roots at or near zero.
    tol_floor = _EPS * max(abs(lo), abs(hi), 1.0)
    a, b = lo, hi
    c, fc = a, fa
    e = d = b - a

    for iteration in range(1, max_iter + 1):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            e = d = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * _EPS * abs(b) + rel_tol * max(abs(b), tol_floor)
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return RootResult(b, fb, iteration)
        if abs(e) < tol or abs(fa) <= abs(fb):
            e = d = m  # bisect
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            s = e
            e = d
            if 2.0 * p < 3.0 * m * q - abs(tol * q) and p < abs(0.5 * s * q):
                d = p / q
            else:
                e = d = m
        a, fa = b, fb
        if abs(d) > tol:
            b += d
        elif m > 0.0:
            b += tol
        else:
            b -= tol
        fb = geval(b)

    raise NonConvergence(f"no root to tolerance within {max_iter} iterations")


def rk4_step(
    rhs: Callable[[float, np.ndarray], np.ndarray], s: float, state: np.ndarray, h: float
) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step of size h."""
    k1 = rhs(s, state)
    k2 = rhs(s + 0.5 * h, state + 0.5 * h * k1)
    k3 = rhs(s + 0.5 * h, state + 0.5 * h * k2)
    k4 = rhs(s + h, state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def rk4_integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    s0: float,
    s1: float,
    state0,
    steps: int,
) -> np.ndarray:
    """Integrate state' = rhs(s, state) from s0 to s1 with `steps` RK4 steps.

    Global error is O(steps**-4) for smooth right-hand sides. Raises
    NonFinite as soon as the state leaves the finite range.
    """
    if not isinstance(steps, (int, np.integer)) or steps < 1:
        raise DomainError(f"steps must be an integer >= 1, got {steps!r}")
    state = np.asarray(state0, dtype=float).copy()
    if not np.isfinite(state).all():
        raise NonFinite("initial state is not finite")
    s0 = float(s0)
    h = (float(s1) - s0) / steps
    for i in range(steps):
        state = rk4_step(rhs, s0 + i * h, state, h)
        if not np.isfinite(state).all():
            raise NonFinite(f"state left the finite range at step {i + 1}")
    return state
