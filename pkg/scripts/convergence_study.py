#!/usr/bin/env python3
"""Grid refinement and domain truncation study for the finite-difference oracle.

Prints CSV: well, level, L, n_points, h, E_analytic, E_numeric, error.
"""
import argparse
import csv
import sys

from pdmwell.models import HarmonicPdmWell, SechPdmWell
from pdmwell.numsolve import Grid, discretize, lowest_eigenvalues


def get_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--well", choices=["sech", "harmonic"], default="sech")
    parser.add_argument("--lengths", type=float, nargs="+", default=[60.0, 120.0, 240.0, 480.0])
    parser.add_argument("--h", type=float, nargs="+", default=[0.024, 0.012, 0.006])
    parser.add_argument("--delta", type=float, default=1e-4)
    return parser.parse_args()


def main():
    args = get_args()
    well = SechPdmWell(1.0, 48.0) if args.well == "sech" else HarmonicPdmWell(1.0, 3.0)
    k = well.bound_count
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["well", "level", "L", "n_points", "h", "E_analytic", "E_numeric", "error"])
    for L in args.lengths:
        for h in args.h:
            n_points = int(round((L + well.a - args.delta * well.a) / h)) + 1
            grid = Grid.for_well(well.a, args.delta * well.a, L, n_points)
            numeric = lowest_eigenvalues(discretize(well.mass, well.potential, grid), k)
            for n, E in enumerate(well.energies()):
                writer.writerow([well.kind, n, L, n_points, f"{grid.h:.6g}", E, f"{numeric[n]:.12g}",
                                 f"{numeric[n] - E:.3e}"])


if __name__ == "__main__":
    main()
