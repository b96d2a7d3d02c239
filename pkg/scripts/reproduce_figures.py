#!/usr/bin/env python3
"""Write the data behind the sech-well figures (a=1, V0=48) as CSV files.

fig1_potential.csv      x, V_eff, M on (-1, 9]
fig2_wavefunctions.csv  x, psi_0, psi_1, psi_2 on (-1, 9]

With --plot, also render both to PNG (needs matplotlib).
"""
import argparse
import os

from pdmwell.cli import main as cli


def get_args():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="figures")
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--plot", action="store_true")
    return parser.parse_args()


def main():
    args = get_args()
    os.makedirs(args.outdir, exist_ok=True)
    common = ["--well", "sech", "--a", "1", "--v0", "48", "--samples", str(args.samples)]
    fig1 = os.path.join(args.outdir, "fig1_potential.csv")
    fig2 = os.path.join(args.outdir, "fig2_wavefunctions.csv")
    with open(fig1, "w") as fh:
        cli(["potential", *common], out=fh)
    with open(fig2, "w") as fh:
        cli(["wavefunctions", *common, "--levels", "0", "1", "2"], out=fh)
    print(fig1)
    print(fig2)

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        import numpy as np

        pot = np.genfromtxt(fig1, delimiter=",", names=True)
        fig, ax = plt.subplots()
        ax.plot(pot["x"], pot["V_eff"], color="k")
        ax.set_xlabel("x")
        ax.set_ylabel("V_eff(x)")
        fig.savefig(os.path.join(args.outdir, "fig1_potential.png"), dpi=150)

        wf = np.genfromtxt(fig2, delimiter=",", names=True)
        fig, ax = plt.subplots()
        for name, color in zip(["psi_0", "psi_1", "psi_2"], ["black", "red", "green"]):
            ax.plot(wf["x"], wf[name], color=color, label=name)
        ax.set_xlabel("x")
        ax.legend()
        fig.savefig(os.path.join(args.outdir, "fig2_wavefunctions.png"), dpi=150)


if __name__ == "__main__":
    main()
