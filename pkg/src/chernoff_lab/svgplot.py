"""Minimal deterministic SVG line plots.

Hand-rolled on purpose: the byte-identical output for identical input makes
plots diffable in tests and version control, and the experiment runner needs
nothing beyond axes, polylines, a legend, and one annotation.  Coordinates
are formatted to fixed precision so repeated runs produce identical files.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = ["overlay_plot", "error_plot", "loglog_plot"]

_WIDTH = 640.0
_HEIGHT = 420.0
_LEFT, _RIGHT, _TOP, _BOTTOM = 70.0, 18.0, 30.0, 48.0
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    norm = raw / mag
    if norm < 1.5:
        step = mag
    elif norm < 3.0:
        step = 2.0 * mag
    elif norm < 7.0:
        step = 5.0 * mag
    else:
        step = 10.0 * mag
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


class _Frame:
    """Affine map from a data rectangle to the pixel plot area."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        if x_hi <= x_lo:
            x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
        if y_hi <= y_lo:
            y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
        pad_x = 0.04 * (x_hi - x_lo)
        pad_y = 0.06 * (y_hi - y_lo)
        self.x_lo, self.x_hi = x_lo - pad_x, x_hi + pad_x
        self.y_lo, self.y_hi = y_lo - pad_y, y_hi + pad_y

    def px(self, x: float) -> float:
        span = self.x_hi - self.x_lo
        return _LEFT + (x - self.x_lo) / span * (_WIDTH - _LEFT - _RIGHT)

    def py(self, y: float) -> float:
        span = self.y_hi - self.y_lo
        return _HEIGHT - _BOTTOM - (y - self.y_lo) / span * (_HEIGHT - _TOP - _BOTTOM)


def _render(path, title, xlabel, ylabel, frame, series, annotations=()):
    """series: list of (label, xs, ys, color, dash, with_markers)."""
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:g}" '
        f'height="{_HEIGHT:g}" viewBox="0 0 {_WIDTH:g} {_HEIGHT:g}">',
        f'<rect width="{_WIDTH:g}" height="{_HEIGHT:g}" fill="white"/>',
        f'<text x="{_WIDTH / 2:g}" y="20" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">{title}</text>',
    ]
    x0, x1 = _LEFT, _WIDTH - _RIGHT
    y0, y1 = _HEIGHT - _BOTTOM, _TOP
    axis = 'stroke="#333" stroke-width="1"'
    out.append(f'<line x1="{x0:g}" y1="{y0:g}" x2="{x1:g}" y2="{y0:g}" {axis}/>')
    out.append(f'<line x1="{x0:g}" y1="{y0:g}" x2="{x0:g}" y2="{y1:g}" {axis}/>')
    for tick in _nice_ticks(frame.x_lo, frame.x_hi):
        p = frame.px(tick)
        out.append(f'<line x1="{_fmt(p)}" y1="{y0:g}" x2="{_fmt(p)}" '
                   f'y2="{y0 + 5:g}" {axis}/>')
        out.append(f'<text x="{_fmt(p)}" y="{y0 + 18:g}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="middle">{tick:.6g}</text>')
    for tick in _nice_ticks(frame.y_lo, frame.y_hi):
        p = frame.py(tick)
        out.append(f'<line x1="{x0 - 5:g}" y1="{_fmt(p)}" x2="{x0:g}" '
                   f'y2="{_fmt(p)}" {axis}/>')
        out.append(f'<text x="{x0 - 8:g}" y="{_fmt(p + 4)}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="end">{tick:.6g}</text>')
    out.append(f'<text x="{(x0 + x1) / 2:g}" y="{_HEIGHT - 8:g}" '
               f'font-family="sans-serif" font-size="12" text-anchor="middle">'
               f'{xlabel}</text>')
    out.append(f'<text x="16" y="{(y0 + y1) / 2:g}" font-family="sans-serif" '
               f'font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 16 {(y0 + y1) / 2:g})">{ylabel}</text>')

    for label, xs, ys, color, dash, markers in series:
        pts = " ".join(f"{_fmt(frame.px(x))},{_fmt(frame.py(y))}"
                       for x, y in zip(xs, ys))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"{dash_attr}/>')
        if markers:
            for x, y in zip(xs, ys):
                out.append(f'<circle cx="{_fmt(frame.px(x))}" '
                           f'cy="{_fmt(frame.py(y))}" r="2.5" fill="{color}"/>')
    # legend, top right corner of the plot area
    for i, (label, *_rest) in enumerate(series):
        if not label:
            continue
        ly = y1 + 14 + 16 * i
        color = series[i][3]
        out.append(f'<line x1="{x1 - 150:g}" y1="{ly:g}" x2="{x1 - 126:g}" '
                   f'y2="{ly:g}" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{x1 - 120:g}" y="{ly + 4:g}" '
                   f'font-family="sans-serif" font-size="11">{label}</text>')
    for text, ax, ay in annotations:
        out.append(f'<text x="{_fmt(ax)}" y="{_fmt(ay)}" '
                   f'font-family="sans-serif" font-size="12" fill="#555">{text}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")


def overlay_plot(path, curves, title="", xlabel="x", ylabel="value"):
    """Draw several (label, xs, ys) curves in one frame.

    Later curves are dashed so coincident lines stay visible.
    """
    if not curves:
        raise ValueError("overlay needs at least one curve")
    all_x = np.concatenate([np.asarray(c[1], dtype=float) for c in curves])
    all_y = np.concatenate([np.asarray(c[2], dtype=float) for c in curves])
    frame = _Frame(all_x.min(), all_x.max(), all_y.min(), all_y.max())
    series = []
    for i, (label, xs, ys) in enumerate(curves):
        dash = "6 4" if i % 2 else ""
        series.append((label, np.asarray(xs, float), np.asarray(ys, float),
                       _PALETTE[i % len(_PALETTE)], dash, False))
    _render(path, title, xlabel, ylabel, frame, series)


def error_plot(path, records, title="error vs composition degree"):
    """Sup-norm error against n on linear axes, with markers."""
    if not records:
        raise ValueError("no records to plot")
    ns = np.array([r.n for r in records], dtype=float)
    errs = np.array([r.measured_error for r in records], dtype=float)
    frame = _Frame(ns.min(), ns.max(), 0.0, float(errs.max()))
    series = [("measured", ns, errs, _PALETTE[0], "", True)]
    closed = [(r.n, r.closed_form_error) for r in records
              if r.closed_form_error is not None]
    if closed:
        cn = np.array([p[0] for p in closed], dtype=float)
        cv = np.array([p[1] for p in closed], dtype=float)
        series.append(("closed form", cn, cv, _PALETTE[1], "6 4", False))
    _render(path, title, "n", "sup-norm error", frame, series)


def loglog_plot(path, records, fit=None, title="convergence order"):
    """log10(error) against log10(n), optionally with the fitted line.

    Zero-error records are skipped (no log).  When a fit is given its line
    is drawn across the frame and annotated with the slope.
    """
    usable = [r for r in records if r.measured_error > 0]
    if not usable:
        raise ValueError("no positive-error records to plot")
    xs = np.log10([r.n for r in usable])
    ys = np.log10([r.measured_error for r in usable])
    frame = _Frame(float(xs.min()), float(xs.max()),
                   float(ys.min()), float(ys.max()))
    series = [("measured", xs, ys, _PALETTE[0], "", True)]
    annotations = []
    if fit is not None:
        fx = np.array([frame.x_lo, frame.x_hi])
        fy = fit.slope * fx + fit.intercept
        series.append((f"fit over n in {fit.window[0]}..{fit.window[1]}",
                       fx, fy, _PALETTE[1], "6 4", False))
        annotations.append((f"slope ≈ {fit.slope:.2f}",
                            _LEFT + 12.0, _TOP + 16.0))
    _render(path, title, "log10 n", "log10 error", frame, series, annotations)
