"""Experiment configs, presets, and the run pipeline.

A config is flat key=value text (file lines and/or command-line overrides,
overrides winning).  Running one builds the problem, measures the error
curve, fits the empirical order, and writes errors.csv, report.json, and a
set of SVG plots into the output directory.  Number formatting is pinned to
17 significant digits so CSV values round-trip to the exact float and
repeated runs diff clean (the wall-time entry in report.json is the one
intentionally non-reproducible field).
"""
from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass

from .analysis import (
    HEAT,
    TRANSPORT,
    BoundProbe,
    ErrorRecord,
    InsufficientDataError,
    LeadingCoefficient,
    Problem,
    RegressionFit,
    composed_on_grid,
    conjecture_bound_probe,
    error_curve,
    exact_on_grid,
    geometric_degrees,
    leading_coefficient,
    loglog_fit,
)
from .functions import Grid, InitialCondition
from .heat import HEAT_SCHEME_KINDS, HeatParams, heat_sin_first_order_constant
from .transport import PowerLawScheme, SlowScheme
from . import svgplot

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "ExperimentConfig",
    "RunReport",
    "parse_config",
    "list_presets",
    "preset_text",
    "run_experiment",
    "write_error_csv",
    "read_error_csv",
    "report_to_dict",
]

CSV_HEADER = "n,measured_error,closed_form_error,abs_gap"

_VALID_KEYS = ("equation", "initial", "scheme", "t", "a", "n", "grid",
               "outputs", "out")
_VALID_OUTPUTS = ("csv", "json", "svg")

_TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """Invalid or inconsistent configuration; carries the offending key."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


@dataclass(frozen=True)
class ExperimentConfig:
    equation: str
    initial: str
    scheme: str
    t: float
    a: float
    n_values: tuple[int, ...]
    grid: Grid
    outputs: tuple[str, ...]
    output_dir: str | None

    def describe(self) -> dict:
        return {
            "equation": self.equation,
            "initial": self.initial,
            "scheme": self.scheme,
            "t": self.t,
            "a": self.a,
            "n_values": list(self.n_values),
            "grid": self.grid.label,
            "outputs": list(self.outputs),
        }

    def build_initial(self) -> InitialCondition:
        if self.initial == "sin":
            return InitialCondition.sine()
        if self.initial == "exp-abs":
            return InitialCondition.exp_abs()
        path = self.initial.split(":", 1)[1]
        xs, ys = [], []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.replace(",", " ").split()
                if len(parts) != 2:
                    raise ConfigError("initial",
                                      f"bad sample line in {path!r}: {line!r}")
                xs.append(float(parts[0]))
                ys.append(float(parts[1]))
        return InitialCondition.tabulated(xs, ys)

    def build_problem(self) -> Problem:
        u0 = self.build_initial()
        if self.equation == TRANSPORT:
            scheme = _parse_transport_scheme(self.scheme)
            params = None
        else:
            scheme = self.scheme
            params = HeatParams(self.a)
        return Problem(self.equation, u0, scheme, params, self.t, self.grid)


@dataclass(frozen=True)
class RunReport:
    config: ExperimentConfig
    records: list[ErrorRecord]
    fit: RegressionFit | None
    leading: LeadingCoefficient | None
    probe: BoundProbe | None
    notes: tuple[str, ...]
    wall_time_seconds: float


def _parse_transport_scheme(token: str):
    body = token.split(":", 1)[1]
    if token.startswith("power:"):
        a_str, k_str = body.split(",")
        return PowerLawScheme(float(a_str), float(k_str))
    return SlowScheme(float(body))


def _validate_scheme(token: str, equation: str) -> None:
    if token in HEAT_SCHEME_KINDS:
        kind = "heat"
    elif token.startswith("power:"):
        kind = "transport"
        parts = token[len("power:"):].split(",")
        if len(parts) != 2:
            raise ConfigError("scheme", "power scheme needs two values: power:a,k")
        try:
            a, k = float(parts[0]), float(parts[1])
        except ValueError:
            raise ConfigError("scheme", f"bad power parameters: {token!r}") from None
        if not (a > 0 and k > 0):
            raise ConfigError("scheme", "power scheme needs a > 0 and k > 0")
    elif token.startswith("slow:"):
        kind = "transport"
        try:
            gamma = float(token[len("slow:"):])
        except ValueError:
            raise ConfigError("scheme", f"bad slow parameter: {token!r}") from None
        if not 0.0 < gamma < 1.0:
            raise ConfigError("scheme", "slow scheme needs gamma strictly in (0,1)")
    else:
        raise ConfigError("scheme", f"unknown scheme {token!r}")
    if kind != equation:
        raise ConfigError("scheme",
                          f"scheme {token!r} incompatible with equation {equation!r}")


def _parse_n_spec(value: str) -> tuple[int, ...]:
    value = value.strip()
    geometric = value.endswith("(geometric)")
    if geometric:
        value = value[: -len("(geometric)")].strip()
    try:
        if ".." in value:
            lo_str, hi_str = value.split("..")
            lo, hi = int(lo_str), int(hi_str)
            if lo < 1 or hi < lo:
                raise ValueError
            if geometric:
                return geometric_degrees(lo, hi)
            return tuple(range(lo, hi + 1))
        if geometric:
            raise ValueError
        ns = tuple(int(s) for s in value.split(","))
        if not ns or any(n < 1 for n in ns) or any(
                b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError
        return ns
    except ValueError:
        raise ConfigError(
            "n", f"expected 'lo..hi', 'lo..hi(geometric)', or an increasing "
                 f"list of positive integers, got {value!r}") from None


def _parse_grid(value: str) -> Grid:
    parts = value.split(",")
    if len(parts) != 3:
        raise ConfigError("grid", f"expected 'lower,upper,count', got {value!r}")
    try:
        return Grid(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ConfigError("grid", str(exc)) from None


def _default_grid(initial: str) -> Grid:
    if initial == "sin":
        return Grid(0.0, _TWO_PI, 20001)
    if initial == "exp-abs":
        return Grid(-5.0, 5.0, 20001)
    raise ConfigError("grid", "tabulated profiles need an explicit grid")


def parse_config(text: str = "", overrides=()) -> ExperimentConfig:
    """Build a validated config from key=value text plus override pairs.

    Later assignments win, overrides last of all.  Unknown keys, malformed
    values, and cross-field conflicts raise ConfigError naming the key.
    """
    pairs: dict[str, str] = {}

    def feed(chunk: str, source: str):
        # a chunk is a config line or an override; both may carry several
        # whitespace-separated key=value tokens
        chunk = chunk.split("#", 1)[0].strip()
        if not chunk:
            return
        for token in chunk.split():
            if "=" not in token:
                raise ConfigError(source, f"expected key=value, got {token!r}")
            key, value = token.split("=", 1)
            key, value = key.strip(), value.strip()
            if key not in _VALID_KEYS:
                raise ConfigError(key, "unknown key")
            pairs[key] = value

    for line in text.splitlines():
        feed(line, "config")
    for item in overrides:
        feed(item, "override")

    if "equation" not in pairs:
        raise ConfigError("equation", "required (transport or heat)")
    equation = pairs["equation"]
    if equation not in (TRANSPORT, HEAT):
        raise ConfigError("equation", f"must be transport or heat, got {equation!r}")

    if "scheme" not in pairs:
        raise ConfigError("scheme", "required")
    scheme = pairs["scheme"]
    _validate_scheme(scheme, equation)

    initial = pairs.get("initial", "sin")
    if initial not in ("sin", "exp-abs") and not initial.startswith("tabulated:"):
        raise ConfigError("initial",
                          f"must be sin, exp-abs, or tabulated:<path>, got {initial!r}")

    try:
        t = float(pairs.get("t", "1"))
    except ValueError:
        raise ConfigError("t", f"not a number: {pairs['t']!r}") from None
    if not (math.isfinite(t) and t > 0):
        raise ConfigError("t", "must be a positive real")

    if "a" in pairs and equation == TRANSPORT:
        raise ConfigError("a", "conductivity applies to heat only "
                               "(transport amplitude lives in scheme=power:a,k)")
    try:
        a = float(pairs.get("a", "1"))
    except ValueError:
        raise ConfigError("a", f"not a number: {pairs['a']!r}") from None
    if not (math.isfinite(a) and a > 0):
        raise ConfigError("a", "must be a positive real")

    if "n" in pairs:
        n_values = _parse_n_spec(pairs["n"])
    elif equation == TRANSPORT:
        n_values = tuple(range(1, 101))
    else:
        n_values = geometric_degrees(1, 256)

    grid = _parse_grid(pairs["grid"]) if "grid" in pairs \
        else _default_grid(initial)

    if "outputs" in pairs:
        outputs = tuple(s.strip() for s in pairs["outputs"].split(",") if s.strip())
        bad = [o for o in outputs if o not in _VALID_OUTPUTS]
        if bad:
            raise ConfigError("outputs", f"unknown outputs {bad}; "
                                         f"valid: {', '.join(_VALID_OUTPUTS)}")
        outputs = tuple(o for o in _VALID_OUTPUTS if o in outputs)
    else:
        outputs = _VALID_OUTPUTS

    return ExperimentConfig(equation, initial, scheme, t, a, n_values, grid,
                            outputs, pairs.get("out"))


# Each preset reproduces one figure family end to end.  The first comment
# line doubles as the list-presets description.
_PRESETS = {
    "fig-transport-approach": (
        "# transport: sine and its shifted approximants at small n, t=2\n"
        "equation=transport\nscheme=power:1,1\ninitial=sin\nt=2\nn=1,2,4,8,16\n"
    ),
    "fig-transport-order": (
        "# transport: first-order error law on sine data, n=1..100\n"
        "equation=transport\nscheme=power:1,1\ninitial=sin\nt=1\nn=1..100\n"
    ),
    "fig-transport-slow-half": (
        "# transport: slow family gamma=1/2, order n^(-1/2)\n"
        "equation=transport\nscheme=slow:0.5\ninitial=sin\nt=1\n"
        "n=16..4096(geometric)\n"
    ),
    "fig-transport-slow-third": (
        "# transport: slow family gamma=1/3, order n^(-1/3)\n"
        "equation=transport\nscheme=slow:0.3333333333333333\ninitial=sin\nt=1\n"
        "n=16..4096(geometric)\n"
    ),
    "fig-transport-slow-sixth": (
        "# transport: slow family gamma=1/6, order n^(-1/6)\n"
        "equation=transport\nscheme=slow:0.16666666666666666\ninitial=sin\nt=1\n"
        "n=16..4096(geometric)\n"
    ),
    "fig-heat-sin-g1": (
        "# heat: three-atom walk, first order on sine data\n"
        "equation=heat\nscheme=g1\ninitial=sin\nt=2\na=1\nn=1..256(geometric)\n"
    ),
    "fig-heat-sin-g2": (
        "# heat: variance+kurtosis matched walk, second order on sine data\n"
        "equation=heat\nscheme=g2\ninitial=sin\nt=2\na=1\nn=1..256(geometric)\n"
    ),
    "fig-heat-sin-g3": (
        "# heat: five-atom walk, third order on sine data\n"
        "equation=heat\nscheme=g3\ninitial=sin\nt=2\na=1\nn=1..256(geometric)\n"
    ),
    "fig-heat-expabs-g1": (
        "# heat: kinked exp(-|x|) data degrades g1 to first order\n"
        "equation=heat\nscheme=g1\ninitial=exp-abs\nt=1\na=1\nn=8..256(geometric)\n"
    ),
    "fig-heat-expabs-g2": (
        "# heat: kinked exp(-|x|) data degrades g2 to first order\n"
        "equation=heat\nscheme=g2\ninitial=exp-abs\nt=1\na=1\nn=8..256(geometric)\n"
    ),
    "fig-heat-expabs-g3": (
        "# heat: kinked exp(-|x|) data, five-atom walk\n"
        "equation=heat\nscheme=g3\ninitial=exp-abs\nt=1\na=1\nn=8..256(geometric)\n"
    ),
}


def list_presets() -> dict[str, str]:
    """Preset names mapped to their one-line descriptions."""
    out = {}
    for name, text in _PRESETS.items():
        first = text.splitlines()[0]
        out[name] = first.lstrip("# ").strip()
    return out


def preset_text(name: str) -> str:
    if name not in _PRESETS:
        known = ", ".join(sorted(_PRESETS))
        raise ConfigError("preset", f"unknown preset {name!r}; known: {known}")
    return _PRESETS[name]


def _float_repr(v: float) -> str:
    return f"{v:.17g}"


def write_error_csv(path: str, records) -> None:
    """errors.csv with 17-significant-digit floats; blank closed-form cells
    where no formula exists."""
    lines = [CSV_HEADER]
    for r in records:
        if r.closed_form_error is None:
            closed = gap = ""
        else:
            closed = _float_repr(r.closed_form_error)
            gap = _float_repr(abs(r.measured_error - r.closed_form_error))
        lines.append(f"{r.n},{_float_repr(r.measured_error)},{closed},{gap}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_error_csv(path: str) -> list[dict]:
    """Parse errors.csv back; floats round-trip exactly at 17 digits."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header in {path!r}")
    rows = []
    for ln in lines[1:]:
        if not ln:
            continue
        n_str, measured, closed, gap = ln.split(",")
        rows.append({
            "n": int(n_str),
            "measured_error": float(measured),
            "closed_form_error": None if closed == "" else float(closed),
            "abs_gap": None if gap == "" else float(gap),
        })
    return rows


def report_to_dict(report: RunReport) -> dict:
    fit = report.fit
    lead = report.leading
    probe = report.probe
    return {
        "config": report.config.describe(),
        "records": [
            {
                "n": r.n,
                "measured_error": r.measured_error,
                "closed_form_error": r.closed_form_error,
                "t": r.t,
                "scheme": r.scheme,
                "initial": r.initial,
                "grid": r.grid,
            }
            for r in report.records
        ],
        "fit": None if fit is None else {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
            "window": list(fit.window),
        },
        "leading_coefficient": None if lead is None else {
            "order": lead.order,
            "largest_n": lead.largest_n,
            "at_largest_n": lead.at_largest_n,
            "richardson": lead.richardson,
        },
        "conjecture_probe": None if probe is None else {
            "order": probe.order,
            "sup_value": probe.sup_value,
            "attained_at_n": probe.attained_at_n,
            "trend": probe.trend,
        },
        "notes": list(report.notes),
        "wall_time_seconds": report.wall_time_seconds,
    }


def _first_order_constant_notes(cfg: ExperimentConfig,
                                lead: LeadingCoefficient | None) -> tuple[str, ...]:
    # g1-on-sine reports compare the measured limit of n*error against the
    # two candidate constants; the raw series expansion is easy to quote
    # without its exponential damping factor, and the data settles which
    # form is right.
    if cfg.equation != HEAT or cfg.scheme != "g1" or cfg.initial != "sin" \
            or lead is None:
        return ()
    params = HeatParams(cfg.a)
    damped = heat_sin_first_order_constant(params, cfg.t, damped=True)
    undamped = heat_sin_first_order_constant(params, cfg.t, damped=False)
    return (
        f"limit of n*error: richardson={_float_repr(lead.richardson)}, "
        f"damped constant exp(-a^2 t)*a^4 t^2/6={_float_repr(damped)}, "
        f"undamped a^4 t^2/6={_float_repr(undamped)}",
        "the undamped form overstates the limit; the measured value matches "
        "the damped constant",
    )


def run_experiment(cfg: ExperimentConfig) -> RunReport:
    """Run one configured experiment and write its requested outputs.

    Always returns the in-memory report; CSV/JSON/SVG files land in
    cfg.output_dir when the corresponding outputs are enabled.
    """
    if cfg.outputs and cfg.output_dir is None:
        raise ConfigError("out", "output directory required when outputs "
                                 "are requested (pass out=<dir> or --out)")
    start = time.perf_counter()
    problem = cfg.build_problem()
    records = error_curve(problem, cfg.n_values)

    def _try(fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InsufficientDataError:
            return None

    fit = _try(loglog_fit, records)
    order = -fit.slope if fit is not None else 1.0
    lead = _try(leading_coefficient, records, order) if order > 0 else None
    probe = _try(conjecture_bound_probe, records, 1.0)
    notes = _first_order_constant_notes(cfg, lead)
    wall = time.perf_counter() - start
    report = RunReport(cfg, records, fit, lead, probe, notes, wall)

    if not cfg.outputs:
        return report
    out_dir = cfg.output_dir
    os.makedirs(out_dir, exist_ok=True)
    if "csv" in cfg.outputs:
        write_error_csv(os.path.join(out_dir, "errors.csv"), records)
    if "json" in cfg.outputs:
        with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
            json.dump(report_to_dict(report), fh, indent=2)
            fh.write("\n")
    if "svg" in cfg.outputs:
        pts = problem.grid.points()
        # thin dense grids for drawing; errors above used every point
        stride = max(1, (len(pts) - 1) // 800)
        view = slice(None, None, stride)
        exact = exact_on_grid(problem, pts)
        for n in sorted(cfg.n_values)[:2]:
            approx = composed_on_grid(problem, n, pts)
            svgplot.overlay_plot(
                os.path.join(out_dir, f"overlay_n{n}.svg"),
                [("exact flow", pts[view], exact[view]),
                 (f"composed, n={n}", pts[view], approx[view])],
                title=f"{cfg.equation}/{cfg.initial}, scheme {cfg.scheme}, "
                      f"t={cfg.t:g}, n={n}",
            )
        svgplot.error_plot(os.path.join(out_dir, "error.svg"), records,
                           title=f"{cfg.equation}/{cfg.initial}, scheme "
                                 f"{cfg.scheme}: error vs n")
        if any(r.measured_error > 0 for r in records):
            svgplot.loglog_plot(os.path.join(out_dir, "error_loglog.svg"),
                                records, fit=fit,
                                title=f"{cfg.equation}/{cfg.initial}, scheme "
                                      f"{cfg.scheme}: order")
    return report
