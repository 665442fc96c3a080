#!/usr/bin/env python3
"""Write CSV and SVG for every reference experiment.

Usage::

    python3 scripts/reproduce_figures.py [--outdir results] [--n-max N]

One ``<figure>.csv`` (plus ``.json`` metadata and ``.svg``) per experiment,
and a short table of a few ranks on stdout.
"""
import argparse
import time
from pathlib import Path

from zolorank.cli import render_svg, write_csv
from zolorank.experiments import ExperimentConfig, run_figure
from zolorank.kernels import FIGURE_IDS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--n-max", type=int, default=None)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    for fig in FIGURE_IDS:
        t0 = time.perf_counter()
        res = run_figure(ExperimentConfig(fig, n_max=args.n_max))
        with open(out / f"{fig}.csv", "w", newline="") as fh:
            write_csv(res, fh)
        (out / f"{fig}.svg").write_text(render_svg(res))
        dt = time.perf_counter() - t0
        print(f"{fig}  ({dt:.1f} s, sigma1 = {res.sigma1:.6e})")
        print(f"  {'n':>3} " + " ".join(f"{s:>12}" for s in sorted(res.series)))
        for n in (1, 2, 5, 10, 15, 20):
            if n > res.config.n_max:
                break
            vals = [res.series[s].get(n, float("nan")) for s in sorted(res.series)]
            print(f"  {n:>3} " + " ".join(f"{v:12.4e}" for v in vals))


if __name__ == "__main__":
    main()
