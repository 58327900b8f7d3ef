#!/usr/bin/env python3
"""Figure 7: P_NC (full lines) and F1 (dashed lines) against time,
one pair of curves per time-series CSV (typically the parallelized encoded
ancilla versus the bare ancilla).

Usage: fig7.py TIMESERIES_CSV [TIMESERIES_CSV ...] --out IMAGE
"""
import argparse

from figutil import load_csv, new_axes, run, save, series_label

COLUMNS = ["t", "f1", "f1_err", "pnc", "pnc_err"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csvs", nargs="+", help="time-series CSVs")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    frames = [(series_label(p), load_csv(p, COLUMNS)) for p in args.csvs]
    fig, ax = new_axes("time steps t", "$P_{NC}$ / $F_1$")
    for label, df in frames:
        line = ax.errorbar(df["t"], df["pnc"], yerr=df["pnc_err"],
                           label=f"{label} $P_{{NC}}$", linewidth=1.2, capsize=2)
        ax.errorbar(df["t"], df["f1"], yerr=df["f1_err"], linestyle="--",
                    linewidth=1, color=line.lines[0].get_color(),
                    label=f"{label} $F_1$")
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
