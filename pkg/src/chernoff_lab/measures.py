"""Finite atomic shift measures and their convolution algebra.

A shift measure is a finite list of (offset, weight) atoms with nonnegative
weights.  Applied to a function f it yields sum_i w_i * f(x + o_i), which is
exactly how every one-step scheme in this package acts.  Composing two shift
operators multiplies the corresponding measures by convolution: offsets add,
weights multiply, coincident offsets merge.  The n-fold composition of a
scheme step is therefore the n-th convolution power of its one-step measure.

Offsets closer together than a relative 1e-12 are considered the same atom
and merged (weights added, merged offset at the weighted mean).  Convolutions
whose pre-merge product count would exceed the atom cap raise
AtomBudgetError rather than exhausting memory.
"""
from __future__ import annotations

import numpy as np

from .functions import EXP_ABS, SIN, InitialCondition

__all__ = [
    "DEFAULT_ATOM_CAP",
    "AtomBudgetError",
    "ShiftMeasure",
    "convolve_measures",
    "measure_power",
    "apply_measure",
]

DEFAULT_ATOM_CAP = 10_000_000

# relative offset tolerance below which two atoms are one
_MERGE_REL_TOL = 1e-12

# pairwise products at which squaring stops paying off (dense 2-D lattices)
_SQUARE_WORK_LIMIT = 4_000_000

# elements per temporary block in the direct evaluation path
_APPLY_BLOCK = 1 << 23

# |offset| beyond which the exp-split fast path would overflow exp()
_EXP_SPLIT_OFFSET_LIMIT = 500.0


class AtomBudgetError(RuntimeError):
    """A convolution would exceed the configured atom cap."""


def _merge_sorted(offsets: np.ndarray, weights: np.ndarray):
    """Merge atoms of a sorted offset array that fall within tolerance.

    Groups are split where the gap to the previous offset exceeds
    1e-12 * max(1, |offset|); each group collapses to its plain mean offset
    with the summed weight.  The mean is deliberately unweighted: group
    members agree to 1e-12 relative anyway, and weighting by masses that may
    sit in the subnormal range (deep convolution powers reach 1e-300-scale
    corner weights) would poison the representative offset with the few
    mantissa bits subnormals retain.
    """
    if offsets.size == 0:
        return offsets, weights
    gaps = np.diff(offsets)
    tol = _MERGE_REL_TOL * np.maximum(1.0, np.abs(offsets[:-1]))
    starts = np.flatnonzero(np.concatenate(([True], gaps > tol)))
    if starts.size == offsets.size:
        return offsets, weights
    counts = np.diff(np.append(starts, offsets.size))
    merged_offsets = np.add.reduceat(offsets, starts) / counts
    merged_weights = np.add.reduceat(weights, starts)
    return merged_offsets, merged_weights


class ShiftMeasure:
    """Finite nonnegative atomic measure on the line (immutable)."""

    __slots__ = ("offsets", "weights")

    def __init__(self, atoms):
        pairs = list(atoms)
        if not pairs:
            raise ValueError("a shift measure needs at least one atom")
        offsets = np.asarray([p[0] for p in pairs], dtype=float)
        weights = np.asarray([p[1] for p in pairs], dtype=float)
        self._init_from(offsets, weights)

    def _init_from(self, offsets, weights):
        if not (np.all(np.isfinite(offsets)) and np.all(np.isfinite(weights))):
            raise ValueError("offsets and weights must be finite")
        if np.any(weights < 0):
            raise ValueError("weights must be nonnegative")
        keep = weights > 0
        if not np.any(keep):
            raise ValueError("a shift measure needs positive total weight")
        offsets, weights = offsets[keep], weights[keep]
        order = np.argsort(offsets, kind="stable")
        offsets, weights = _merge_sorted(offsets[order], weights[order])
        offsets.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def _from_canonical(cls, offsets, weights) -> "ShiftMeasure":
        m = object.__new__(cls)
        m._init_from(offsets, weights)
        return m

    @classmethod
    def identity(cls) -> "ShiftMeasure":
        return cls([(0.0, 1.0)])

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("ShiftMeasure is immutable")

    def __len__(self) -> int:
        return int(self.offsets.size)

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.offsets.tolist(), self.weights.tolist()))

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def __repr__(self):
        if len(self) <= 4:
            inner = ", ".join(f"({o:.6g}, {w:.6g})" for o, w in self.atoms)
            return f"ShiftMeasure([{inner}])"
        return f"ShiftMeasure(<{len(self)} atoms, mass {self.total_weight:.6g}>)"


def convolve_measures(m1: ShiftMeasure, m2: ShiftMeasure,
                      *, atom_cap: int = DEFAULT_ATOM_CAP) -> ShiftMeasure:
    """Convolution of two shift measures: offsets add, weights multiply.

    Raises AtomBudgetError when the pre-merge pairwise count len(m1)*len(m2)
    would exceed `atom_cap`.
    """
    pairs = len(m1) * len(m2)
    if pairs > atom_cap:
        raise AtomBudgetError(
            f"convolution would enumerate {pairs} atoms before merging, "
            f"exceeding the atom cap of {atom_cap}"
        )
    offsets = np.add.outer(m1.offsets, m2.offsets).ravel()
    weights = np.multiply.outer(m1.weights, m2.weights).ravel()
    return ShiftMeasure._from_canonical(offsets, weights)


def measure_power(m: ShiftMeasure, n: int,
                  *, atom_cap: int = DEFAULT_ATOM_CAP) -> ShiftMeasure:
    """n-fold convolution power of a shift measure (n >= 1).

    Exponentiation by squaring, with a work guard: once squaring the partial
    power would cost more than a few million pairwise products (as happens
    for schemes whose powers live on a dense two-scale lattice), the
    remaining factors are multiplied in one by one, which is quadratically
    cheaper there.  The result is identical either way.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("composition degree n must be a positive integer")
    n = int(n)
    if n == 1:
        return m
    half = measure_power(m, n // 2, atom_cap=atom_cap)
    if len(half) ** 2 <= _SQUARE_WORK_LIMIT:
        out = convolve_measures(half, half, atom_cap=atom_cap)
        if n % 2:
            out = convolve_measures(out, m, atom_cap=atom_cap)
        return out
    out = half
    for _ in range(n - n // 2):
        out = convolve_measures(out, m, atom_cap=atom_cap)
    return out


def _apply_direct(m: ShiftMeasure, u0, xs: np.ndarray) -> np.ndarray:
    out = np.zeros(xs.shape, dtype=float)
    block = max(1, _APPLY_BLOCK // max(1, xs.size))
    for i in range(0, len(m), block):
        offs = m.offsets[i:i + block]
        vals = np.asarray(u0(xs[None, :] + offs[:, None]), dtype=float)
        out += m.weights[i:i + block] @ vals
    return out


def _apply_sine(m: ShiftMeasure, xs: np.ndarray) -> np.ndarray:
    # sum w sin(x + o) = (sum w cos o) sin x + (sum w sin o) cos x
    a = float(np.dot(m.weights, np.cos(m.offsets)))
    b = float(np.dot(m.weights, np.sin(m.offsets)))
    return a * np.sin(xs) + b * np.cos(xs)


def _apply_exp_abs(m: ShiftMeasure, xs: np.ndarray) -> np.ndarray:
    # sum w exp(-|x+o|) splits at o = -x:
    #   e^{x} * sum_{o < -x} w e^{o}  +  e^{-x} * sum_{o >= -x} w e^{-o}
    # with both partial sums read off prefix/suffix cumulative sums.
    lo = np.concatenate(([0.0], np.cumsum(m.weights * np.exp(m.offsets))))
    hi = np.concatenate(([0.0], np.cumsum((m.weights * np.exp(-m.offsets))[::-1])))[::-1]
    idx = np.searchsorted(m.offsets, -xs, side="left")
    return np.exp(xs) * lo[idx] + np.exp(-xs) * hi[idx]


def apply_measure(m: ShiftMeasure, u0, x):
    """Evaluate (m * u0)(x) = sum_i weight_i * u0(x + offset_i).

    Always the exact weighted sum of analytic evaluations; there is no grid
    resampling.  For the sine and two-sided-exponential profiles the sum is
    folded through exact identities (angle addition, two-sided split) so the
    cost is O(atoms + points) instead of O(atoms * points); other profiles
    and plain callables take the direct blocked route.  `x` may be a scalar
    or an array; the result matches its shape.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("evaluation points must be finite")
    xs = np.atleast_1d(arr)
    if isinstance(u0, InitialCondition) and u0.kind == SIN:
        out = _apply_sine(m, xs)
    elif (isinstance(u0, InitialCondition) and u0.kind == EXP_ABS
          and float(np.max(np.abs(m.offsets))) + float(np.max(np.abs(xs)))
          < _EXP_SPLIT_OFFSET_LIMIT):
        out = _apply_exp_abs(m, xs)
    else:
        out = _apply_direct(m, u0, xs)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)
