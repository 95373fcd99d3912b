"""Shift semigroup and its one-step approximations.

The flow solving u_t = u_x is a pure translation: u(t, x) = u0(x + t).  The
approximation families here replace the step translation by a slightly
overshooting one, so that n composed steps land at t plus a small surplus.
Because a composition of shifts is again a single shift, every approximant
stays a one-atom shift measure, the surplus has a closed form, and for the
sine profile the sup-norm error does too: shifting sin by tau changes it by
exactly 2|sin(tau/2)| in sup norm.

Two families are covered.  The power-law family overshoots a step of size s
by a*s**(k+1), which accumulates to a*t**(k+1)/n**k after n steps of t/n:
error decays like n**(-k).  The slow family overshoots by s**(1+gamma) with
gamma in (0, 1), accumulating to t**(1+gamma)/n**gamma: error decays slower
than any 1/n rate as gamma shrinks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import InitialCondition
from .measures import ShiftMeasure

__all__ = [
    "PowerLawScheme",
    "SlowScheme",
    "transport_exact",
    "transport_chernoff_measure",
    "transport_power_composed",
    "transport_slow_composed",
    "transport_composed_measure",
    "transport_sin_error_exact",
    "transport_sin_error_slow",
]


@dataclass(frozen=True)
class PowerLawScheme:
    """One-step shift s + a*s**(k+1); after n steps of t/n the surplus is
    a*t**(k+1)/n**k, so the family approximates translation at rate n**(-k)."""

    a: float
    k: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError("a must be a positive real")
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError("k must be a positive real")

    @property
    def label(self) -> str:
        return f"power:{self.a:g},{self.k:g}"

    def step_offset(self, s: float) -> float:
        # single-application shift for step size s
        return s + self.a * s ** (self.k + 1.0)


@dataclass(frozen=True)
class SlowScheme:
    """One-step shift s + s**(1+gamma); n steps of t/n leave a surplus
    t**(1+gamma)/n**gamma, an order slower than 1/n for every gamma < 1."""

    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and 0.0 < self.gamma < 1.0):
            raise ValueError("gamma must lie strictly between 0 and 1")

    @property
    def label(self) -> str:
        return f"slow:{self.gamma:g}"

    def step_offset(self, s: float) -> float:
        return s + s ** (1.0 + self.gamma)


def transport_exact(u0: InitialCondition, t: float, x):
    """Exact translation flow: value of u0 at x + t.  Requires t >= 0."""
    if t < 0:
        raise ValueError("transport flow needs t >= 0")
    arr = np.asarray(x, dtype=float) + t
    return u0(arr if arr.ndim else float(arr))


def transport_chernoff_measure(scheme, t: float, n: int = 1) -> ShiftMeasure:
    """One approximation step as a one-atom shift measure.

    The atom sits at the scheme's step offset for step size t/n; raising this
    measure to the n-th convolution power gives the composed approximant.
    """
    if t < 0:
        raise ValueError("step needs t >= 0")
    if n < 1:
        raise ValueError("n must be a positive integer")
    if t == 0:
        return ShiftMeasure.identity()
    return ShiftMeasure([(scheme.step_offset(t / n), 1.0)])


def transport_power_composed(scheme: PowerLawScheme, t: float, n: int) -> float:
    """Total shift of n composed power-law steps: t + a*t**(k+1)/n**k."""
    if t < 0:
        raise ValueError("composition needs t >= 0")
    if n < 1:
        raise ValueError("n must be a positive integer")
    return t + scheme.a * t ** (scheme.k + 1.0) / float(n) ** scheme.k


def transport_slow_composed(scheme: SlowScheme, t: float, n: int) -> float:
    """Total shift of n composed slow steps: t + t**(1+gamma)/n**gamma.

    t = 0 degenerates to a zero shift (continuity); negative t is rejected.
    """
    if t < 0:
        raise ValueError("composition needs t >= 0")
    if n < 1:
        raise ValueError("n must be a positive integer")
    if t == 0:
        return 0.0
    return t + t ** (1.0 + scheme.gamma) / float(n) ** scheme.gamma


def transport_composed_measure(scheme, t: float, n: int) -> ShiftMeasure:
    """The n-step composition collapsed to its single atom."""
    if isinstance(scheme, PowerLawScheme):
        shift = transport_power_composed(scheme, t, n)
    elif isinstance(scheme, SlowScheme):
        shift = transport_slow_composed(scheme, t, n)
    else:
        raise TypeError(f"unsupported transport scheme: {scheme!r}")
    return ShiftMeasure([(shift, 1.0)])


def _sin_shift_error(tau: float) -> float:
    # sup over x of |sin(x + tau) - sin(x)| = 2|sin(tau/2)|
    return 2.0 * abs(math.sin(0.5 * tau))


def transport_sin_error_exact(scheme: PowerLawScheme, t: float, n: int) -> float:
    """Exact sup-norm error of the n-step power-law approximant on sine data."""
    surplus = transport_power_composed(scheme, t, n) - t
    return _sin_shift_error(surplus)


def transport_sin_error_slow(scheme: SlowScheme, t: float, n: int) -> float:
    """Exact sup-norm error of the n-step slow approximant on sine data."""
    if t == 0:
        return 0.0
    surplus = transport_slow_composed(scheme, t, n) - t
    return _sin_shift_error(surplus)
