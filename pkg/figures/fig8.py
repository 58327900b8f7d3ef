#!/usr/bin/env python3
"""Figure 8: P_NC against eps for several gate qualities C, log-log, with the
fitted D(C)*eps^2 overlaid for every C. Point data comes from the per-C CSVs
written by `steanesim threshold --points-out-dir`; the D values come from the
summary threshold CSV.

Usage: fig8.py POINTS_CSV [POINTS_CSV ...] --threshold THRESHOLD_CSV --out IMAGE
"""
import argparse
import re

import numpy as np

from figutil import FigureError, load_csv, new_axes, run, save

COLUMNS = ["eps", "pnc", "pnc_err"]


def c_value(path: str, threshold_cs: list[float]) -> float:
    """Recover the C value encoded in a per-C points file name."""
    m = re.search(r"_c(\d+)", path)
    if not m:
        raise FigureError(
            f"{path}: cannot infer C from file name (expected *_c<percent>*)"
        )
    c = int(m.group(1)) / 100.0
    for known in threshold_cs:
        if abs(known - c) < 5e-3:
            return known
    raise FigureError(f"{path}: C={c:g} has no row in the threshold CSV")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csvs", nargs="+", help="per-C point CSVs (eps,pnc,pnc_err,n)")
    ap.add_argument("--threshold", required=True,
                    help="threshold summary CSV with columns c,d,...")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    summary = load_csv(args.threshold, ["c", "d"])
    d_by_c = dict(zip(summary["c"], summary["d"]))
    loaded = []
    for p in args.csvs:
        df = load_csv(p, COLUMNS)
        c = c_value(p, list(d_by_c))
        loaded.append((c, d_by_c[c], df))

    fig, ax = new_axes(r"$\epsilon$", "$P_{NC}$", xscale="log", yscale="log")
    for c, d, df in sorted(loaded):
        line = ax.errorbar(df["eps"], df["pnc"], yerr=df["pnc_err"],
                           label=f"C = {c:g}", marker="o", markersize=4,
                           linestyle="none", capsize=2)
        grid = np.geomspace(df["eps"].min(), df["eps"].max(), 64)
        ax.plot(grid, d * grid**2, linewidth=1,
                color=line.lines[0].get_color(),
                label=f"C = {c:g}: $D\\epsilon^2$, D={d:.0f}")
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
