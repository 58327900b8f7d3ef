#!/usr/bin/env python3
"""Figure 3: non-correctable probability P_NC against time, with the
unencoded-qubit baseline P_NE = 1 - (1 - 2*eps/3)^t overlaid as a plain line.

Usage: fig3.py TIMESERIES_CSV [TIMESERIES_CSV ...] --baseline BASELINE_CSV --out IMAGE
"""
import argparse

from figutil import load_csv, new_axes, run, save, series_label

COLUMNS = ["t", "pnc", "pnc_err"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csvs", nargs="+", help="time-series CSVs (one per ancilla)")
    ap.add_argument("--baseline", required=True,
                    help="baseline CSV with columns t,pne")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    frames = [(series_label(p), load_csv(p, COLUMNS)) for p in args.csvs]
    base = load_csv(args.baseline, ["t", "pne"])
    fig, ax = new_axes("time steps t", "$P_{NC}$")
    for label, df in frames:
        ax.errorbar(df["t"], df["pnc"], yerr=df["pnc_err"], label=label,
                    marker=".", markersize=3, linewidth=1, capsize=2)
    ax.plot(base["t"], base["pne"], color="black", linewidth=1.2,
            label="unencoded $P_{NE}$")
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
