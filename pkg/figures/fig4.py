#!/usr/bin/env python3
"""Figure 4: P_NC against eps at fixed C = eps/gamma, log-log, one curve per
sweep CSV; fault-tolerant curves get their fitted D*eps^2 overlay read from
the sibling manifest.

Usage: fig4.py SWEEP_EPS_CSV [SWEEP_EPS_CSV ...] --out IMAGE
"""
import argparse

import numpy as np

from figutil import FigureError, load_csv, load_manifest, new_axes, run, save, series_label

COLUMNS = ["eps", "pnc", "pnc_err"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csvs", nargs="+", help="eps-sweep CSVs (one per ancilla)")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    loaded = []
    for p in args.csvs:
        df = load_csv(p, COLUMNS)
        manifest = load_manifest(p)
        fit = manifest.get("fit", {})
        if "d" not in fit:
            raise FigureError(f"{p}: manifest has no quadratic fit coefficient")
        loaded.append((series_label(p), df, fit))

    fig, ax = new_axes(r"$\epsilon$", "$P_{NC}$", xscale="log", yscale="log")
    for label, df, fit in loaded:
        line = ax.errorbar(df["eps"], df["pnc"], yerr=df["pnc_err"],
                           label=label, marker="o", markersize=4,
                           linestyle="none", capsize=2)
        exponent = fit.get("exponent")
        if exponent is not None and exponent > 1.5:
            grid = np.geomspace(df["eps"].min(), df["eps"].max(), 64)
            ax.plot(grid, fit["d"] * grid**2, linewidth=1,
                    color=line.lines[0].get_color(),
                    label=f"{label}: $D\\epsilon^2$, D={fit['d']:.0f}")
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
