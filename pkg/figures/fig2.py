#!/usr/bin/env python3
"""Figure 2: weight-one fidelity F1 against time steps, one curve per CSV.

Usage: fig2.py TIMESERIES_CSV [TIMESERIES_CSV ...] --out IMAGE
"""
import argparse

from figutil import load_csv, new_axes, run, save, series_label

COLUMNS = ["t", "f1", "f1_err"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csvs", nargs="+", help="time-series CSVs (one per ancilla)")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    frames = [(series_label(p), load_csv(p, COLUMNS)) for p in args.csvs]
    fig, ax = new_axes("time steps t", "fidelity $F_1$")
    for label, df in frames:
        ax.errorbar(df["t"], df["f1"], yerr=df["f1_err"], label=label,
                    marker=".", markersize=3, linewidth=1, capsize=2)
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
