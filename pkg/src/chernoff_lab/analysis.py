"""Error curves, empirical convergence orders, and bound probes.

The workflow mirrors how approximation rates are measured experimentally:
build the n-step composed approximant for a range of composition degrees n,
record its sup-norm distance from the exact flow on a fixed grid, then fit a
line through (log10 n, log10 error).  The negated slope is the empirical
order.  Two follow-up diagnostics read more out of the same records: the
leading coefficient C in error ~ C / n**order, and a probe that checks
whether n**order * error stays bounded (does the family obey a C/n**order
bound at all?).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import EXP_ABS, SIN, Grid, InitialCondition
from .measures import apply_measure, measure_power
from . import heat as _heat
from . import transport as _transport

__all__ = [
    "TRANSPORT",
    "HEAT",
    "InsufficientDataError",
    "ErrorRecord",
    "RegressionFit",
    "LeadingCoefficient",
    "BoundProbe",
    "Problem",
    "geometric_degrees",
    "exact_on_grid",
    "composed_on_grid",
    "error_curve",
    "loglog_fit",
    "leading_coefficient",
    "conjecture_bound_probe",
]

TRANSPORT = "transport"
HEAT = "heat"


class InsufficientDataError(ValueError):
    """Too few usable records for the requested statistic."""


@dataclass(frozen=True)
class ErrorRecord:
    """Sup-norm error of one composed approximant.

    closed_form_error is filled when the scheme/profile pair admits an exact
    error formula (transport on sine, heat sine multipliers); otherwise None.
    """

    n: int
    measured_error: float
    closed_form_error: float | None
    t: float
    scheme: str
    initial: str
    grid: str


@dataclass(frozen=True)
class RegressionFit:
    """Least-squares line through (log10 n, log10 error)."""

    slope: float
    intercept: float
    r_squared: float
    window: tuple[int, int]


@dataclass(frozen=True)
class LeadingCoefficient:
    """Estimates of C in error ~ C / n**order.

    at_largest_n is n**order * error at the biggest recorded n; richardson
    extrapolates the same quantity from the two biggest n, cancelling the
    next-order term.
    """

    order: float
    largest_n: int
    at_largest_n: float
    richardson: float


@dataclass(frozen=True)
class BoundProbe:
    """Does error * n**order stay bounded over the recorded range?"""

    order: float
    sup_value: float
    attained_at_n: int
    trend: str  # "bounded" | "growing"


@dataclass(frozen=True)
class Problem:
    """One experiment: an equation, a profile, a scheme, a time, a grid.

    For transport, scheme is a PowerLawScheme or SlowScheme instance and
    params stays None.  For heat, scheme is one of the kind strings "g1",
    "g2", "g3" and params carries the conductivity.
    """

    equation: str
    u0: InitialCondition
    scheme: object
    params: _heat.HeatParams | None
    t: float
    grid: Grid

    def __post_init__(self):
        if self.equation not in (TRANSPORT, HEAT):
            raise ValueError(f"unknown equation: {self.equation!r}")
        if self.equation == HEAT:
            if self.scheme not in _heat.HEAT_SCHEME_KINDS:
                raise ValueError(f"heat scheme must be one of {_heat.HEAT_SCHEME_KINDS}")
            if self.params is None:
                raise ValueError("heat problems need HeatParams")
            if not self.t > 0:
                raise ValueError("heat curves need t > 0")
        else:
            if not isinstance(self.scheme, (_transport.PowerLawScheme,
                                            _transport.SlowScheme)):
                raise TypeError("transport scheme must be PowerLawScheme or SlowScheme")
            if self.t < 0:
                raise ValueError("transport curves need t >= 0")

    @property
    def scheme_label(self) -> str:
        if self.equation == HEAT:
            return str(self.scheme)
        return self.scheme.label


def geometric_degrees(lo: int, hi: int) -> tuple[int, ...]:
    """Doubling composition degrees from lo, keeping hi as the endpoint."""
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    out = []
    n = lo
    while n < hi:
        out.append(n)
        n *= 2
    out.append(hi)
    return tuple(out)


def exact_on_grid(problem: Problem, pts: np.ndarray | None = None) -> np.ndarray:
    """Exact flow of the problem's profile on its grid (or on given points)."""
    if pts is None:
        pts = problem.grid.points()
    if problem.equation == TRANSPORT:
        return np.asarray(problem.u0(pts + problem.t), dtype=float)
    if problem.u0.kind == SIN:
        return np.asarray(_heat.heat_exact_sin(problem.params, problem.t, pts))
    if problem.u0.kind == EXP_ABS and problem.params.a == 1.0:
        return np.asarray(_heat.heat_exact_expabs(problem.t, pts))
    # no closed form: pointwise quadrature (slow; prefer modest grids here)
    return np.array([_heat.heat_exact_quadrature(problem.u0, problem.params,
                                                 problem.t, float(xx))
                     for xx in pts])


def composed_on_grid(problem: Problem, n: int,
                     pts: np.ndarray | None = None) -> np.ndarray:
    """The n-step composed approximant evaluated on the problem's grid."""
    if pts is None:
        pts = problem.grid.points()
    if problem.equation == TRANSPORT:
        m = _transport.transport_composed_measure(problem.scheme, problem.t, n)
    else:
        step = _heat.heat_chernoff_measure(problem.scheme, problem.params,
                                           problem.t / n)
        m = measure_power(step, n)
    return np.asarray(apply_measure(m, problem.u0, pts), dtype=float)


def _closed_form_error(problem: Problem, n: int) -> float | None:
    if problem.u0.kind != SIN:
        return None
    if problem.equation == TRANSPORT:
        s = problem.scheme
        if isinstance(s, _transport.PowerLawScheme):
            return _transport.transport_sin_error_exact(s, problem.t, n)
        return _transport.transport_sin_error_slow(s, problem.t, n)
    mult = _heat.heat_sin_multiplier(problem.scheme, problem.params, problem.t, n)
    decay = math.exp(-problem.params.a ** 2 * problem.t)
    return abs(mult - decay)


def error_curve(problem: Problem, n_values) -> list[ErrorRecord]:
    """Measure the composed approximant against the exact flow for each n.

    Returns one record per composition degree, in the given order.  Degrees
    must be strictly increasing positive integers.  A heat composition whose
    atom count would exceed the engine cap raises AtomBudgetError.
    """
    degrees = [int(n) for n in n_values]
    if not degrees:
        raise ValueError("n_values must be non-empty")
    if any(n < 1 for n in degrees) or any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("n_values must be strictly increasing positive integers")

    pts = problem.grid.points()
    exact = exact_on_grid(problem, pts)
    records = []
    for n in degrees:
        approx = composed_on_grid(problem, n, pts)
        measured = float(np.max(np.abs(approx - exact)))
        records.append(ErrorRecord(
            n=n,
            measured_error=measured,
            closed_form_error=_closed_form_error(problem, n),
            t=problem.t,
            scheme=problem.scheme_label,
            initial=problem.u0.label,
            grid=problem.grid.label,
        ))
    return records


def loglog_fit(records, n_min: int = 4) -> RegressionFit:
    """Fit log10(error) against log10(n) over records with n >= n_min.

    Records with zero measured error are excluded (their log is undefined
    and they carry no rate information).  Needs at least three usable
    points.  The default window start drops the pre-asymptotic degrees.
    """
    usable = [r for r in records if r.n >= n_min and r.measured_error > 0.0]
    if len(usable) < 3:
        raise InsufficientDataError(
            f"regression needs >= 3 records with n >= {n_min} and positive error, "
            f"got {len(usable)}")
    xs = np.log10([r.n for r in usable])
    ys = np.log10([r.measured_error for r in usable])
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_res = float(resid @ resid)
    centered = ys - ys.mean()
    ss_tot = float(centered @ centered)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RegressionFit(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=min(1.0, max(0.0, r2)),
        window=(usable[0].n, usable[-1].n),
    )


def leading_coefficient(records, order: float) -> LeadingCoefficient:
    """Extract C from error ~ C / n**order using the largest degrees.

    Plain estimate: n**order * error at the largest n.  Richardson estimate:
    assuming n**order * error = C + D/n, eliminate D from the two largest
    degrees.  Needs at least two records.
    """
    if order <= 0:
        raise ValueError("order must be positive")
    rs = sorted(records, key=lambda r: r.n)
    if len(rs) < 2:
        raise InsufficientDataError("leading coefficient needs >= 2 records")
    r1, r2 = rs[-2], rs[-1]
    l1 = r1.n ** order * r1.measured_error
    l2 = r2.n ** order * r2.measured_error
    richardson = (r2.n * l2 - r1.n * l1) / (r2.n - r1.n)
    return LeadingCoefficient(
        order=float(order),
        largest_n=r2.n,
        at_largest_n=float(l2),
        richardson=float(richardson),
    )


def conjecture_bound_probe(records, order: float) -> BoundProbe:
    """Check whether n**order * error looks bounded over the records.

    Reports the sup of the scaled errors and where it is attained; the trend
    is "growing" when the last three scaled values each increase by more
    than 1%, "bounded" otherwise.  The 1% threshold separates genuine
    power-law growth from rounding-level wobble.
    """
    rs = sorted(records, key=lambda r: r.n)
    if len(rs) < 3:
        raise InsufficientDataError("bound probe needs >= 3 records")
    scaled = [(r.n, r.n ** order * r.measured_error) for r in rs]
    sup_n, sup_val = max(scaled, key=lambda pair: pair[1])
    (_, v1), (_, v2), (_, v3) = scaled[-3:]
    growing = v2 > 1.01 * v1 and v3 > 1.01 * v2
    return BoundProbe(
        order=float(order),
        sup_value=float(sup_val),
        attained_at_n=int(sup_n),
        trend="growing" if growing else "bounded",
    )
