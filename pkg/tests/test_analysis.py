"""Tests for error curves, regression fits, and the bound probe."""
import math

import numpy as np
import pytest

from chernoff_lab.analysis import (
    HEAT,
    TRANSPORT,
    BoundProbe,
    ErrorRecord,
    InsufficientDataError,
    Problem,
    composed_on_grid,
    conjecture_bound_probe,
    error_curve,
    exact_on_grid,
    geometric_degrees,
    leading_coefficient,
    loglog_fit,
)
from chernoff_lab.functions import Grid, InitialCondition
from chernoff_lab.heat import HeatParams, heat_exact_quadrature
from chernoff_lab.transport import PowerLawScheme, SlowScheme

from oracles import gauss_convolution_quadrature

TWO_PI = 2.0 * math.pi


def _record(n, err, closed=None):
    return ErrorRecord(n=n, measured_error=err, closed_form_error=closed,
                       t=1.0, scheme="power:1,1", initial="sin",
                       grid="[0,6.28319]/101")


def _transport_problem(t=1.0, count=4001):
    return Problem(equation=TRANSPORT, u0=InitialCondition.sine(),
                   scheme=PowerLawScheme(1.0, 1.0), params=None,
                   t=t, grid=Grid(0.0, TWO_PI, count))


def _heat_sin_problem(kind="g1", t=2.0, count=2001):
    return Problem(equation=HEAT, u0=InitialCondition.sine(),
                   scheme=kind, params=HeatParams(1.0),
                   t=t, grid=Grid(0.0, TWO_PI, count))


# ---------------------------------------------------------------- degrees

def test_geometric_degrees_doubles_and_keeps_endpoint():
    assert geometric_degrees(1, 100) == (1, 2, 4, 8, 16, 32, 64, 100)
    assert geometric_degrees(16, 4096) == (16, 32, 64, 128, 256, 512,
                                           1024, 2048, 4096)
    assert geometric_degrees(5, 5) == (5,)


def test_geometric_degrees_validation():
    with pytest.raises(ValueError):
        geometric_degrees(0, 8)
    with pytest.raises(ValueError):
        geometric_degrees(8, 4)


# ---------------------------------------------------------------- problems

def test_problem_validation():
    sine = InitialCondition.sine()
    grid = Grid(0.0, TWO_PI, 101)
    with pytest.raises(ValueError):
        Problem(equation="wave", u0=sine, scheme=PowerLawScheme(1, 1),
                params=None, t=1.0, grid=grid)
    with pytest.raises(ValueError):
        Problem(equation=HEAT, u0=sine, scheme="g4", params=HeatParams(1.0),
                t=1.0, grid=grid)
    with pytest.raises(ValueError):
        Problem(equation=HEAT, u0=sine, scheme="g1", params=None,
                t=1.0, grid=grid)
    with pytest.raises(ValueError):
        Problem(equation=HEAT, u0=sine, scheme="g1", params=HeatParams(1.0),
                t=0.0, grid=grid)
    with pytest.raises(TypeError):
        Problem(equation=TRANSPORT, u0=sine, scheme="g1", params=None,
                t=1.0, grid=grid)
    with pytest.raises(ValueError):
        Problem(equation=TRANSPORT, u0=sine, scheme=PowerLawScheme(1, 1),
                params=None, t=-1.0, grid=grid)


def test_scheme_labels():
    assert _transport_problem().scheme_label == "power:1,1"
    assert _heat_sin_problem("g2").scheme_label == "g2"
    slow = Problem(equation=TRANSPORT, u0=InitialCondition.sine(),
                   scheme=SlowScheme(0.5), params=None, t=1.0,
                   grid=Grid(0.0, TWO_PI, 101))
    assert slow.scheme_label == "slow:0.5"


# ---------------------------------------------------------------- curves

def test_transport_curve_matches_closed_form_law():
    prob = _transport_problem()
    records = error_curve(prob, (1, 2, 4, 8))
    for r in records:
        assert r.closed_form_error is not None
        # grid sampling can only miss the true sup by curvature over one cell
        assert r.measured_error == pytest.approx(r.closed_form_error, abs=1e-5)
        assert r.scheme == "power:1,1"
        assert r.initial == "sin"


def test_heat_sine_curve_matches_multiplier_gap():
    prob = _heat_sin_problem("g1")
    records = error_curve(prob, (1, 2, 4))
    for r in records:
        assert r.closed_form_error is not None
        assert r.measured_error == pytest.approx(r.closed_form_error, rel=1e-5)


def test_transport_zero_time_gives_exact_zero_errors():
    prob = _transport_problem(t=0.0, count=501)
    records = error_curve(prob, (1, 2, 4, 8))
    assert all(r.measured_error == 0.0 for r in records)
    with pytest.raises(InsufficientDataError):
        loglog_fit(records, n_min=1)


def test_error_curve_rejects_bad_degree_lists():
    prob = _transport_problem(count=101)
    with pytest.raises(ValueError):
        error_curve(prob, ())
    with pytest.raises(ValueError):
        error_curve(prob, (4, 2))
    with pytest.raises(ValueError):
        error_curve(prob, (0, 1))
    with pytest.raises(ValueError):
        error_curve(prob, (3, 3))


def test_exact_on_grid_expabs_general_conductivity_uses_quadrature():
    prob = Problem(equation=HEAT, u0=InitialCondition.exp_abs(),
                   scheme="g1", params=HeatParams(2.0), t=0.5,
                   grid=Grid(-1.0, 1.0, 5))
    vals = exact_on_grid(prob)
    for x, v in zip(prob.grid.points(), vals):
        want = gauss_convolution_quadrature(prob.u0, 2.0, 0.5, float(x),
                                            kinks=(0.0,))
        assert v == pytest.approx(want, abs=1e-10)


def test_exact_on_grid_expabs_unit_conductivity_closed_form():
    prob = Problem(equation=HEAT, u0=InitialCondition.exp_abs(),
                   scheme="g1", params=HeatParams(1.0), t=1.0,
                   grid=Grid(-2.0, 2.0, 9))
    vals = exact_on_grid(prob)
    for x, v in zip(prob.grid.points(), vals):
        assert v == pytest.approx(
            heat_exact_quadrature(prob.u0, prob.params, 1.0, float(x)),
            abs=1e-8)


def test_composed_on_grid_heat_matches_manual_power():
    from chernoff_lab.measures import apply_measure, convolve_measures
    from chernoff_lab.heat import heat_chernoff_measure

    prob = _heat_sin_problem("g2", count=101)
    step = heat_chernoff_measure("g2", prob.params, prob.t / 3)
    m = convolve_measures(convolve_measures(step, step), step)
    want = apply_measure(m, prob.u0, prob.grid.points())
    got = composed_on_grid(prob, 3)
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-15)


# ---------------------------------------------------------------- fitting

def test_loglog_fit_recovers_exact_power_law():
    records = [_record(n, 5.0 / n**2) for n in (4, 8, 16, 32, 64)]
    fit = loglog_fit(records)
    assert fit.slope == pytest.approx(-2.0, abs=1e-10)
    assert fit.intercept == pytest.approx(math.log10(5.0), abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.window == (4, 64)


def test_loglog_fit_window_drops_small_degrees():
    records = [_record(n, 1.0 / n) for n in (1, 2, 4, 8, 16)]
    fit = loglog_fit(records, n_min=4)
    assert fit.window == (4, 16)


def test_loglog_fit_excludes_zero_errors():
    records = [_record(n, 5.0 / n**2) for n in (4, 8, 16, 32)]
    records.append(_record(64, 0.0))
    fit = loglog_fit(records)
    assert fit.window == (4, 32)
    assert fit.slope == pytest.approx(-2.0, abs=1e-10)


def test_loglog_fit_needs_three_points():
    records = [_record(n, 1.0 / n) for n in (4, 8)]
    with pytest.raises(InsufficientDataError):
        loglog_fit(records)


# ------------------------------------------------------------ coefficient

def test_leading_coefficient_exact_on_pure_power_law():
    records = [_record(n, 5.0 / n**2) for n in (16, 32, 64, 128)]
    lead = leading_coefficient(records, 2.0)
    assert lead.largest_n == 128
    assert lead.at_largest_n == pytest.approx(5.0, rel=1e-12)
    assert lead.richardson == pytest.approx(5.0, rel=1e-12)


def test_leading_coefficient_richardson_cancels_next_order():
    # error = 5/n^2 + 3/n^3, so n^2 * error = 5 + 3/n
    records = [_record(n, 5.0 / n**2 + 3.0 / n**3) for n in (64, 128)]
    lead = leading_coefficient(records, 2.0)
    assert lead.at_largest_n == pytest.approx(5.0 + 3.0 / 128.0, rel=1e-12)
    assert lead.richardson == pytest.approx(5.0, rel=1e-12)


def test_leading_coefficient_validation():
    records = [_record(n, 1.0 / n) for n in (4, 8)]
    with pytest.raises(ValueError):
        leading_coefficient(records, 0.0)
    with pytest.raises(InsufficientDataError):
        leading_coefficient(records[:1], 1.0)


# ------------------------------------------------------------------ probe

def test_bound_probe_flat_series_is_bounded():
    records = [_record(n, 5.0 / n**2) for n in (4, 8, 16, 32, 64)]
    probe = conjecture_bound_probe(records, 2.0)
    assert isinstance(probe, BoundProbe)
    assert probe.trend == "bounded"
    assert probe.sup_value == pytest.approx(5.0, rel=1e-12)


def test_bound_probe_flags_growth_at_wrong_order():
    # decay is n^{-1/2}; probing at order 1 scales it up like sqrt(n)
    records = [_record(n, n**-0.5) for n in (16, 32, 64, 128, 256)]
    probe = conjecture_bound_probe(records, 1.0)
    assert probe.trend == "growing"
    assert probe.attained_at_n == 256
    assert probe.sup_value == pytest.approx(256.0 ** 0.5, rel=1e-12)


def test_bound_probe_tolerates_sub_percent_wobble():
    errs = {4: 1.000, 8: 1.004, 16: 1.006, 32: 1.008}
    records = [_record(n, v / n) for n, v in errs.items()]
    probe = conjecture_bound_probe(records, 1.0)
    assert probe.trend == "bounded"


def test_bound_probe_needs_three_points():
    records = [_record(n, 1.0 / n) for n in (4, 8)]
    with pytest.raises(InsufficientDataError):
        conjecture_bound_probe(records, 1.0)
