"""Command-line entry point.

Three subcommands::

    zolorank figure <id> [--n-max N] [--seed S] [--series a,b] [--z1-node] [--out f.csv] [--svg f.svg]
    zolorank nodes --E lo hi --F lo hi --rank n [--z1-node]
    zolorank approx --kernel NAME [--alpha a --beta b] --rank n --out DIR [--check]

Exit status is 0 on success, 2 for bad arguments or domain errors and 3
when a numerical iteration fails to converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConvergenceError
from .experiments import SERIES, ExperimentConfig, FigureResult, FigureSetup, run_figure, setup_figure, zolotarev_scheme
from .kernels import DEFAULT_SEED, FIGURE_IDS, Family, KernelSpec
from .lowrank import scheme_from_rational
from .zolotarev import IntervalPair, extended_nodes_z1, nodes_poles

__all__ = ["main", "format_value", "write_csv", "render_svg"]

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 2, 3

# kernel family -> experiment whose grids and interval pair it borrows
_KERNEL_FIGURE = {
    Family.GAMMA_RATIO_HANKEL: "hankel-intro",
    Family.CAUCHY: "cauchy-matrix",
    Family.CAUCHY_TENSOR: "cauchy-tensor",
    Family.LOG_CAUCHY: "log-cauchy",
    Family.TWISTED_HANKEL: "hankel-transform",
    Family.BETA_CAUCHY: "hankel-intro",
}


class _UsageError(ValueError):
    pass


def format_value(v: float) -> str:
    """Scientific notation with 17 significant digits (round-trips exactly)."""
    return f"{v:.16e}"


def _format_entry(z) -> str:
    if isinstance(z, complex) or np.iscomplexobj(z):
        z = complex(z)
        return f"{z.real:.16e}{z.imag:+.16e}j"
    return format_value(float(z))


def _short(v: float) -> str:
    return "inf" if math.isinf(v) and v > 0 else "-inf" if math.isinf(v) else f"{v:.17g}"


def write_csv(result: FigureResult, stream) -> None:
    """Write ``figure,series,n,value`` rows with LF line endings."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["figure", "series", "n", "value"])
    for fig, name, n, value in result.rows():
        w.writerow([fig, name, n, format_value(value)])


def render_svg(result: FigureResult, width: int = 640, height: int = 420) -> str:
    """A bare-bones log-y line chart of every series."""
    colors = {"best": "#000000", "zolotarev": "#d62728", "chebyshev": "#1f77b4", "bound": "#2ca02c"}
    pts = [(n, v) for s in result.series.values() for n, v in s.items() if v > 0]
    if not pts:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"/>\n'
    nmax = max(n for n, _ in pts)
    lo = math.floor(math.log10(min(v for _, v in pts)))
    hi = math.ceil(math.log10(max(v for _, v in pts)))
    hi = hi if hi > lo else lo + 1
    m = 50

    def sx(n):
        return m + (width - 2 * m) * (n - 1) / max(nmax - 1, 1)

    def sy(v):
        return height - m - (height - 2 * m) * (math.log10(v) - lo) / (hi - lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect x="{m}" y="{m}" width="{width - 2 * m}" height="{height - 2 * m}" fill="none" stroke="#888"/>',
    ]
    for e in range(lo, hi + 1):
        y = sy(10.0**e)
        out.append(f'<text x="{m - 6}" y="{y:.1f}" font-size="10" text-anchor="end">1e{e}</text>')
    out.append(f'<text x="{width / 2:.0f}" y="{height - 12}" font-size="12" text-anchor="middle">n (rank)</text>')
    for k, name in enumerate(sorted(result.series)):
        curve = [(n, v) for n, v in sorted(result.series[name].items()) if v > 0]
        col = colors.get(name, "#555555")
        path = " ".join(f"{sx(n):.1f},{sy(v):.1f}" for n, v in curve)
        out.append(f'<polyline fill="none" stroke="{col}" stroke-width="1.5" points="{path}"/>')
        out.append(f'<text x="{width - m - 4}" y="{m + 14 * (k + 1)}" font-size="11" fill="{col}" text-anchor="end">{name}</text>')
    out.append(f'<text x="{width / 2:.0f}" y="20" font-size="13" text-anchor="middle">{result.config.figure}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _cmd_figure(args) -> int:
    series = tuple(s.strip() for s in args.series.split(",") if s.strip())
    cfg = ExperimentConfig(args.figure, args.n_max, args.seed, series, True if args.z1_node else None)
    result = run_figure(cfg)
    buf = io.StringIO()
    write_csv(result, buf)
    if args.out:
        Path(args.out).write_text(buf.getvalue(), newline="")
        meta = {
            "figure": cfg.figure,
            "n_max": cfg.n_max,
            "seed": cfg.seed,
            "series": list(cfg.series),
            "sigma1": result.sigma1,
            "formula_edge_ranks": list(result.bound_edge),
        }
        Path(args.out + ".json").write_text(json.dumps(meta, indent=2) + "\n")
    else:
        sys.stdout.write(buf.getvalue())
    if args.svg:
        Path(args.svg).write_text(render_svg(result))
    return EXIT_OK


def _cmd_nodes(args) -> int:
    if args.rank < 1:
        raise _UsageError("--rank must be >= 1")
    pair = IntervalPair(tuple(args.E), tuple(args.F))
    rp = extended_nodes_z1(pair, args.rank) if args.z1_node else nodes_poles(pair, args.rank)
    scheme = scheme_from_rational(rp)
    w = scheme.weights(normalized=False)
    for j, q in enumerate(scheme.nodes, 1):
        print(f"q {j} {_short(q)}")
    for j, p in enumerate(rp.poles, 1):
        print(f"p {j} {_short(p)}")
    for j, wj in enumerate(w, 1):
        print(f"w {j} {_short(wj)}")
    return EXIT_OK


def _approx_setup(args) -> FigureSetup:
    family = Family(args.kernel)
    setup = setup_figure(_KERNEL_FIGURE[family], args.seed)
    if family is Family.BETA_CAUCHY:
        if args.alpha is None or args.beta is None:
            raise _UsageError("beta-cauchy needs --alpha and --beta")
        setup.kernel = KernelSpec(family, args.alpha, args.beta)
        setup.pair = IntervalPair(setup.pair.E, (-math.inf, -args.alpha))
    return setup


def _write_matrix(path: Path, M: np.ndarray) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for row in M:
            w.writerow([_format_entry(z) for z in row])


def _read_matrix(path: Path) -> np.ndarray:
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    cplx = any(r and r[0].endswith("j") for r in rows)
    return np.array([[complex(v) if cplx else float(v) for v in r] for r in rows])


def _cmd_approx(args) -> int:
    if args.rank < 1:
        raise _UsageError("--rank must be >= 1")
    setup = _approx_setup(args)
    z1 = setup.z1_default if args.z1_node is None else args.z1_node
    scheme = zolotarev_scheme(setup.pair, args.rank, z1)
    fac = setup.factors(scheme)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_matrix(out / "U.csv", fac.U)
    _write_matrix(out / "V.csv", fac.V)
    meta = {
        "kernel": setup.kernel.family.value,
        "alpha": setup.kernel.alpha,
        "beta": setup.kernel.beta,
        "grids": setup.figure,
        "rank": fac.rank,
        "z1_node": z1,
        "nodes": [_short(q) for q in scheme.nodes],
        "poles": [_short(p) for p in scheme.poles],
    }
    if args.check:
        # measured from the files just written, so the number describes them
        from .linalg import spectral_norm

        UV = _read_matrix(out / "U.csv") @ _read_matrix(out / "V.csv")
        A = setup.matrix
        meta["relative_error"] = spectral_norm(A - UV) / spectral_norm(A)
        print(f"relative error {format_value(meta['relative_error'])}")
    (out / "metadata.json").write_text(json.dumps(meta, indent=2) + "\n")
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zolorank", description="Zolotarev-based low-rank kernel approximation.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("figure", help="error curves of a reference experiment as CSV")
    f.add_argument("figure", choices=FIGURE_IDS)
    f.add_argument("--n-max", type=int, default=None)
    f.add_argument("--seed", type=int, default=DEFAULT_SEED)
    f.add_argument("--series", default=",".join(SERIES))
    f.add_argument("--z1-node", action="store_true", help="use the extra-node scheme for the zolotarev series")
    f.add_argument("--out", help="CSV path (default: stdout)")
    f.add_argument("--svg", help="also write a log-scale SVG plot")
    f.set_defaults(func=_cmd_figure)

    nd = sub.add_parser("nodes", help="print Zolotarev nodes, poles and barycentric weights")
    nd.add_argument("--E", nargs=2, type=float, required=True, metavar=("LO", "HI"))
    nd.add_argument("--F", nargs=2, type=float, required=True, metavar=("LO", "HI"))
    nd.add_argument("--rank", type=int, required=True)
    nd.add_argument("--z1-node", action="store_true")
    nd.set_defaults(func=_cmd_nodes)

    ap = sub.add_parser("approx", help="write low-rank factors U, V of a named kernel")
    ap.add_argument("--kernel", required=True, choices=[f.value for f in Family])
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--beta", type=float)
    ap.add_argument("--rank", type=int, required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--check", action="store_true", help="report the relative spectral error")
    z = ap.add_mutually_exclusive_group()
    z.add_argument("--z1-node", dest="z1_node", action="store_true", default=None)
    z.add_argument("--no-z1-node", dest="z1_node", action="store_false")
    ap.set_defaults(func=_cmd_approx)
    return p


def _protect_negative_inf(argv: Sequence[str]) -> list[str]:
    # argparse reads "-inf" as an option flag; a leading space keeps it a value
    return [" " + a if a.lower() in ("-inf", "-infinity") else a for a in argv]


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parser().parse_args(_protect_negative_inf(argv))
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"zolorank: no convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ValueError, OSError) as exc:
        print(f"zolorank: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
