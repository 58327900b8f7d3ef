#!/usr/bin/env python3
"""Figure 5: long-time behaviour — F0 (top), P_NC (middle) and F1 (bottom)
against time on one axes, one set of curves per time-series CSV.

Usage: fig5.py TIMESERIES_CSV [TIMESERIES_CSV ...] --out IMAGE
"""
import argparse

from figutil import load_csv, new_axes, run, save, series_label

COLUMNS = ["t", "f0", "f0_err", "f1", "f1_err", "pnc", "pnc_err"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csvs", nargs="+", help="time-series CSVs (one per ancilla)")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    frames = [(series_label(p), load_csv(p, COLUMNS)) for p in args.csvs]
    fig, ax = new_axes("time steps t", "$F_0$ / $P_{NC}$ / $F_1$")
    for label, df in frames:
        line = ax.errorbar(df["t"], df["f0"], yerr=df["f0_err"],
                           label=f"{label} $F_0$", marker=".", markersize=3,
                           linewidth=1, capsize=2)
        color = line.lines[0].get_color()
        ax.errorbar(df["t"], df["pnc"], yerr=df["pnc_err"], color=color,
                    linestyle="--", linewidth=1, label=f"{label} $P_{{NC}}$")
        ax.errorbar(df["t"], df["f1"], yerr=df["f1_err"], color=color,
                    linestyle=":", linewidth=1, label=f"{label} $F_1$")
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
