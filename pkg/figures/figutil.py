"""Shared helpers for the figure scripts.

Each figure script consumes CSV files produced by the `steanesim` CLI
(and their sibling `<name>.manifest.json` files) and writes one image.
Inputs are fully validated before any output file is created, so a failed
run never leaves an image behind.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

# deterministic SVG element ids so identical data renders identical files
matplotlib.rcParams["svg.hashsalt"] = "figures"


class FigureError(Exception):
    """Input data is unusable for the requested figure."""


def load_csv(path: str | Path, required: list[str]) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise FigureError(f"{path}: file not found")
    try:
        df = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise FigureError(f"{path}: empty CSV (no header, no rows)") from None
    missing = [c for c in required if c not in df.columns]
    if missing:
        raise FigureError(
            f"{path}: missing required column(s) {', '.join(missing)}; "
            f"found {', '.join(df.columns)}"
        )
    if df.empty:
        raise FigureError(f"{path}: CSV has a header but no data rows")
    return df


def load_manifest(csv_path: str | Path) -> dict:
    mpath = Path(str(csv_path) + ".manifest.json")
    if not mpath.exists():
        raise FigureError(f"{mpath}: manifest not found")
    with open(mpath) as fh:
        return json.load(fh)


def series_label(path: str | Path) -> str:
    """Human label derived from the CSV file name."""
    stem = Path(path).stem
    for prefix in ("timeseries_", "sweep_eps_", "sweep_dt_", "threshold_"):
        if stem.startswith(prefix):
            stem = stem[len(prefix):]
            break
    return stem.replace("_", " ")


def new_axes(xlabel: str, ylabel: str, xscale: str = "linear",
             yscale: str = "linear"):
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_xscale(xscale)
    ax.set_yscale(yscale)
    return fig, ax


def save(fig, out: str | Path) -> None:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    ax = fig.axes[0]
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=8)
    fig.tight_layout()
    metadata = {"Date": None} if out.suffix == ".svg" else None
    fig.savefig(out, dpi=150, metadata=metadata)
    plt.close(fig)


def run(main) -> None:
    """Execute a figure script's main(); map input errors to exit code 1."""
    try:
        main()
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)
