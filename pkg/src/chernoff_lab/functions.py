"""Initial profiles and uniform grids.

Every initial condition here is a bounded function on the real line that can
be evaluated at arbitrary points, scalar or numpy array alike.  Three kinds
are supported: the sine wave, the two-sided exponential exp(-|x|), and a
tabulated profile (sorted samples, linear interpolation between them, clamped
to the end values outside the table).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIN",
    "EXP_ABS",
    "TABULATED",
    "InitialCondition",
    "Grid",
    "eval_initial",
    "sup_norm_diff",
]

SIN = "sin"
EXP_ABS = "exp-abs"
TABULATED = "tabulated"


@dataclass(frozen=True, eq=False)
class InitialCondition:
    """A bounded initial profile, callable on scalars and arrays."""

    kind: str
    samples_x: tuple[float, ...] | None = None
    samples_y: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in (SIN, EXP_ABS, TABULATED):
            raise ValueError(f"unknown initial-condition kind: {self.kind!r}")
        if self.kind == TABULATED:
            xs, ys = self.samples_x, self.samples_y
            if not xs or ys is None or len(xs) != len(ys) or len(xs) < 2:
                raise ValueError("tabulated profile needs >= 2 matching samples")
            axs = np.asarray(xs, dtype=float)
            ays = np.asarray(ys, dtype=float)
            if not (np.all(np.isfinite(axs)) and np.all(np.isfinite(ays))):
                raise ValueError("tabulated samples must be finite")
            if np.any(np.diff(axs) <= 0):
                raise ValueError("tabulated sample points must be strictly increasing")
        elif self.samples_x is not None or self.samples_y is not None:
            raise ValueError(f"{self.kind} takes no samples")

    @classmethod
    def sine(cls) -> "InitialCondition":
        return cls(SIN)

    @classmethod
    def exp_abs(cls) -> "InitialCondition":
        return cls(EXP_ABS)

    @classmethod
    def tabulated(cls, xs, ys) -> "InitialCondition":
        return cls(TABULATED, tuple(float(v) for v in xs), tuple(float(v) for v in ys))

    @property
    def label(self) -> str:
        return self.kind

    @property
    def bound(self) -> float:
        """sup |u0| over the whole line."""
        if self.kind == TABULATED:
            return float(np.max(np.abs(self.samples_y)))
        return 1.0

    def breakpoints(self) -> tuple[float, ...]:
        """Points where the profile is not smooth (for piecewise quadrature)."""
        if self.kind == EXP_ABS:
            return (0.0,)
        if self.kind == TABULATED:
            return self.samples_x
        return ()

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        if self.kind == SIN:
            out = np.sin(arr)
        elif self.kind == EXP_ABS:
            out = np.exp(-np.abs(arr))
        else:
            out = np.interp(arr, self.samples_x, self.samples_y)
        if arr.ndim == 0:
            return float(out)
        return out

    def __repr__(self):
        if self.kind == TABULATED:
            return f"InitialCondition({self.kind!r}, {len(self.samples_x)} samples)"
        return f"InitialCondition({self.kind!r})"


def eval_initial(u0: InitialCondition, x):
    """Evaluate an initial profile, rejecting non-finite evaluation points."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("evaluation points must be finite")
    return u0(x)


@dataclass(frozen=True)
class Grid:
    """Uniform closed grid on [lower, upper] with `count` points."""

    lower: float
    upper: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("grid bounds must be finite")
        if self.upper <= self.lower:
            raise ValueError("grid needs upper > lower")
        if self.count < 2:
            raise ValueError("grid needs at least 2 points")

    @property
    def spacing(self) -> float:
        return (self.upper - self.lower) / (self.count - 1)

    @property
    def label(self) -> str:
        return f"[{self.lower:g},{self.upper:g}]/{self.count}"

    def points(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.count)


def sup_norm_diff(f, g, grid: Grid) -> float:
    """max over the grid of |f(x) - g(x)| for two point-evaluable functions."""
    pts = grid.points()
    fv = np.asarray(f(pts), dtype=float)
    gv = np.asarray(g(pts), dtype=float)
    if fv.shape != pts.shape or gv.shape != pts.shape:
        raise ValueError("functions must evaluate pointwise on the grid")
    diff = fv - gv
    if not np.all(np.isfinite(diff)):
        raise ValueError("non-finite values on the grid")
    return float(np.max(np.abs(diff)))
