#!/usr/bin/env python3
"""A tour of the shift-measure engine.

Composed scheme steps are finite atomic measures: offsets add under
convolution, weights multiply, coincident atoms merge.  Everything else in
the laboratory stands on these three rules.
"""
import math

from chernoff_lab import (
    HeatParams,
    InitialCondition,
    ShiftMeasure,
    apply_measure,
    convolve_measures,
    heat_binomial_coefficients,
    heat_chernoff_measure,
    measure_power,
)


def show(measure, name):
    atoms = ", ".join(f"({o:+.3f}: {w:.4f})" for o, w in measure.atoms)
    print(f"{name}: {len(measure)} atoms  {atoms}")


def main():
    step = heat_chernoff_measure("g1", HeatParams(1.0), 1.0)
    show(step, "one g1 step")
    show(convolve_measures(step, step), "two steps")
    show(measure_power(step, 4), "four steps")

    # after n steps the weights are exactly binomial: site p gets
    # C(2n, n+p) / 4^n, the distribution of a lazy random walk
    n = 6
    table = heat_binomial_coefficients("g1", n)
    m = measure_power(heat_chernoff_measure("g1", HeatParams(1.0), 1.0 / n), n)
    print(f"\nn = {n} integer weights: {table.coefficients}")
    print(f"normalizer 4^{n} = {table.normalizer}")
    gap = max(abs(w - c / table.normalizer)
              for w, c in zip(m.weights, table.coefficients))
    print(f"engine weights match the exact table to {gap:.1e}")

    # applying a measure is a weighted sum of shifted profile values;
    # probability weights make it an average, so bounded data stays bounded
    sine = InitialCondition.sine()
    big = measure_power(heat_chernoff_measure("g3", HeatParams(1.0), 2.0 / 64), 64)
    vals = apply_measure(big, sine, [0.0, 0.5, math.pi / 2])
    print(f"\n64 g3 steps: {len(big)} atoms, total weight "
          f"{big.total_weight:.15f}")
    print("values at x = 0, 0.5, pi/2:", " ".join(f"{v:+.6f}" for v in vals))
    print(f"all within the data bound 1: {all(abs(v) <= 1.0 for v in vals)}")

    # hand-built measures work the same way
    mine = ShiftMeasure([(-1.0, 0.25), (0.0, 0.5), (1.0, 0.25)])
    show(convolve_measures(mine, mine), "\nhand-built three-atom squared")


if __name__ == "__main__":
    main()
