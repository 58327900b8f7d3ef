#!/usr/bin/env python3
"""Figure 6: P_NC against the recovery period dt for the bare ancilla,
one curve per eps-value CSV.

Usage: fig6.py SWEEP_DT_CSV [SWEEP_DT_CSV ...] --out IMAGE
"""
import argparse

from figutil import load_csv, load_manifest, new_axes, run, save, series_label

COLUMNS = ["dt", "pnc", "pnc_err"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("csvs", nargs="+", help="dt-sweep CSVs (one per eps)")
    ap.add_argument("--out", required=True, help="output image path")
    args = ap.parse_args()

    loaded = []
    for p in args.csvs:
        df = load_csv(p, COLUMNS)
        label = series_label(p)
        try:
            eps = load_manifest(p)["config"].get("eps")
            if eps is not None:
                label = rf"$\epsilon$ = {eps:g}"
        except Exception:
            pass  # manifest is optional here; the file label is enough
        loaded.append((label, df))

    fig, ax = new_axes(r"recovery period $\Delta t$", "$P_{NC}$")
    for label, df in loaded:
        ax.errorbar(df["dt"], df["pnc"], yerr=df["pnc_err"], label=label,
                    marker="o", markersize=4, linewidth=1, capsize=2)
    save(fig, args.out)


if __name__ == "__main__":
    run(main)
