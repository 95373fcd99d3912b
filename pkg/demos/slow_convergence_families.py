#!/usr/bin/env python3
"""Convergence can be made arbitrarily slow.

The slow transport family shifts each step by s + s^(1+gamma), and the
n-fold composition at t=1 overshoots by n^(-gamma).  Pick gamma close to 0
and the error curve flattens as much as you like.  A probe of n * error
shows no first-order bound holds for any of these schemes.
"""
from chernoff_lab import (
    Grid,
    InitialCondition,
    Problem,
    SlowScheme,
    conjecture_bound_probe,
    error_curve,
    geometric_degrees,
    loglog_fit,
)

GAMMAS = (0.5, 1.0 / 3.0, 1.0 / 6.0)


def main():
    degrees = geometric_degrees(16, 4096)
    # a modest grid is plenty here, the sup lives on a slowly varying sine
    grid = Grid(0.0, 6.283185307179586, 4001)

    for gamma in GAMMAS:
        prob = Problem(equation="transport", u0=InitialCondition.sine(),
                       scheme=SlowScheme(gamma), params=None, t=1.0, grid=grid)
        records = error_curve(prob, degrees)
        fit = loglog_fit(records, n_min=16)
        probe = conjecture_bound_probe(records, 1.0)
        print(f"gamma = {gamma:.4f}")
        print(f"  slope {fit.slope:+.4f} (expected {-gamma:+.4f}), "
              f"r^2 {fit.r_squared:.6f}")
        print(f"  error at n=4096: {records[-1].measured_error:.6f}")
        print(f"  n*error is {probe.trend} "
              f"(sup {probe.sup_value:.3g} at n={probe.attained_at_n})")

    print("\neven at n = 4096 the gamma=1/6 error is still about 1/4;")
    print("no C/n bound fits any of these, n*error keeps growing")


if __name__ == "__main__":
    main()
