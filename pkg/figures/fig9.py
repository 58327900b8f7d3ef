#!/usr/bin/env python3
"""Figure 9: memory error threshold eps_th(C) = 16/(3 D(C)) against gate
quality C, from the threshold summary CSV.

Usage: fig9.py THRESHOLD_CSV --out IMAGE
"""
import argparse

from figutil import load_csv, new_axes, run, save

COLUMNS = ["c", "eps_th_lin"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csv", help="threshold CSV with columns c,d,eps_th_lin,eps_th_cross")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    df = load_csv(args.csv, COLUMNS).sort_values("c")
    fig, ax = new_axes(r"$C = \epsilon/\gamma$", r"$\epsilon_{th}$")
    ax.plot(df["c"], df["eps_th_lin"], marker="s", markersize=5,
            linewidth=1.2, label=r"$\epsilon_{th}(C) = 16/(3D)$")
    if "eps_th_cross" in df.columns:
        ax.plot(df["c"], df["eps_th_cross"], marker="x", markersize=5,
                linestyle="--", linewidth=1, label="crossing-point estimate")
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
