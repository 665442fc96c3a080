#!/usr/bin/env python3
"""Geometric decay of Chebyshev interpolation for the log kernel.

For ``log(x + y)`` with ``x, y`` in ``[1, N]`` the nearest singularity in
``y`` sits at ``-1``.  Polynomial interpolation then converges like
``R^{-n} / n`` where ``R`` is the Bernstein-ellipse parameter of that point.
The script prints the measured per-step ratio with and without the ``1/n``
factor next to ``1/R``.
"""
import argparse

from zolorank.experiments import ExperimentConfig, chebyshev_rate_prediction, decay_rate, run_figure


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lo", type=int, default=30)
    ap.add_argument("--hi", type=int, default=40)
    ap.add_argument("--seed", type=int, default=20250001)
    args = ap.parse_args()

    res = run_figure(ExperimentConfig("log-cauchy", n_max=args.hi, seed=args.seed, series=("chebyshev",)))
    curve = res.series["chebyshev"]
    pred = chebyshev_rate_prediction((1.0, 100.0), -1.0)
    print(f"1/R                    = {pred:.5f}")
    print(f"raw ratio   [{args.lo},{args.hi}] = {decay_rate(curve, args.lo, args.hi):.5f}")
    print(f"n*err ratio [{args.lo},{args.hi}] = {decay_rate(curve, args.lo, args.hi, power=1):.5f}")


if __name__ == "__main__":
    main()
