"""Command-line front end.

    pdmwell spectrum      --well sech --a 1 --v0 48
    pdmwell potential     --well sech --a 1 --v0 48 --samples 400
    pdmwell wavefunctions --well sech --a 1 --v0 48 --levels 0 1 2
    pdmwell verify        --well harmonic --omega 1 --a 3 --k 4

Tables go to stdout as CSV (default) or JSON; diagnostics go to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
"""
import argparse
import csv
import json
import logging
import math
import sys

import numpy as np

from .errors import BoundStateError, ConfigurationError, ConstructionError, DomainError
from .models import HarmonicPdmWell, SechPdmWell
from .numsolve import verify_model

log = logging.getLogger("pdmwell")


class UsageError(Exception):
    pass


def build_well(args):
    if args.a is None:
        raise UsageError("--a is required")
    if args.well == "harmonic":
        if args.omega is None:
            raise UsageError("--omega is required for the harmonic well")
        return HarmonicPdmWell(args.omega, args.a)
    if args.v0 is None:
        raise UsageError("--v0 is required for the sech well")
    return SechPdmWell(args.a, args.v0)


def _fmt(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return value


def emit(args, well, columns, rows, out):
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        return
    doc = {
        "well": well.kind,
        "params": well.params(),
        "results": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows],
    }
    json.dump(doc, out, indent=2)
    out.write("\n")


def sample_x(args, well):
    a = well.a
    x_max = args.x_max
    if x_max is None:
        x_max = -a + 10.0 if well.kind == "sech" else 10.0 * a
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.x_min is None:
        # open at the wall: (-a, x_max]
        return np.linspace(-a, x_max, args.samples + 1)[1:]
    if not x_max > args.x_min:
        raise UsageError(f"--x-max ({x_max}) must exceed --x-min ({args.x_min})")
    return np.linspace(args.x_min, x_max, args.samples)


def cmd_spectrum(args, out):
    well = build_well(args)
    rows = [(n, E, well.threshold, well.bound_count) for n, E in enumerate(well.energies())]
    emit(args, well, ["n", "E_n", "threshold", "bound_count"], rows, out)
    return 0


def cmd_potential(args, out):
    well = build_well(args)
    x = sample_x(args, well)
    V = well.potential(x)
    inside = x > -well.a
    M = np.full(x.shape, math.inf)
    M[inside] = well.mass(x[inside])
    rows = [(float(xi), float(vi), float(mi)) for xi, vi, mi in zip(x, V, M)]
    emit(args, well, ["x", "V_eff", "M"], rows, out)
    return 0


def cmd_wavefunctions(args, out):
    well = build_well(args)
    levels = args.levels if args.levels else list(range(well.bound_count))
    for n in levels:
        if not 0 <= n < well.bound_count:
            raise UsageError(f"level {n} is not bound (bound_count={well.bound_count})")
    x = sample_x(args, well)
    inside = x > -well.a
    if not np.all(inside):
        log.warning("%d sample(s) at or behind the wall x <= -a; psi set to 0 there", int((~inside).sum()))
    cols = []
    for n in levels:
        psi = np.zeros_like(x)
        if np.any(inside):
            psi[inside] = well.psi(n, x[inside])
        cols.append(psi)
    rows = [(float(xi), *(float(c[i]) for c in cols)) for i, xi in enumerate(x)]
    emit(args, well, ["x"] + [f"psi_{n}" for n in levels], rows, out)
    return 0


def cmd_verify(args, out):
    well = build_well(args)
    k = args.k if args.k is not None else min(well.bound_count, 5)
    if k > well.bound_count:
        raise UsageError(f"k exceeds bound_count={well.bound_count}")
    if k < 1:
        raise UsageError("--k must be at least 1")
    report = verify_model(well, delta=args.delta, L=args.L, n_points=args.n_points, k=k)
    doc = report.to_dict()
    json.dump(doc, out, indent=2, default=_json_value)
    out.write("\n")
    for rec in report.levels:
        log.info("n=%d E=%.10g E_num=%.10g err=%.3g overlap=%.10f %s", rec.n, rec.E_analytic,
                 rec.E_numeric, rec.abs_err, rec.overlap, "ok" if rec.passed else "FAIL")
    return 0 if report.passed else 1


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--well", choices=["harmonic", "sech"], required=True)
    common.add_argument("--omega", type=float, help="oscillator frequency (harmonic well)")
    common.add_argument("--a", type=float, help="wall position parameter, wall at x = -a")
    common.add_argument("--v0", type=float, help="depth parameter V0 (sech well)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--x-min", type=float)
    sampling.add_argument("--x-max", type=float)
    sampling.add_argument("--samples", type=int, default=200)

    parser = argparse.ArgumentParser(prog="pdmwell", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="closed-form bound-state energies")
    sub.add_parser("potential", parents=[common, sampling], help="sampled V_eff(x) and M(x)")
    p = sub.add_parser("wavefunctions", parents=[common, sampling], help="sampled normalized psi_n(x)")
    p.add_argument("--levels", type=int, nargs="+")
    p = sub.add_parser("verify", parents=[common], help="check against the finite-difference oracle")
    p.add_argument("--k", type=int, help="number of levels to check (default min(bound_count, 5))")
    p.add_argument("--delta", type=float, help="gap between the wall and the first grid point")
    p.add_argument("--L", type=float, help="right end of the truncated domain")
    p.add_argument("--n-points", type=int, help="number of grid points")
    return parser


COMMANDS = {
    "spectrum": cmd_spectrum,
    "potential": cmd_potential,
    "wavefunctions": cmd_wavefunctions,
    "verify": cmd_verify,
}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ConstructionError, DomainError, BoundStateError, ConfigurationError) as exc:
        print(f"pdmwell: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
