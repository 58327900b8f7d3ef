#!/usr/bin/env python3
"""Unencoded single-qubit memory baseline.

Writes <outdir>/baseline.csv with the analytic non-identity probability per
time step (columns t,pne) and, with --mc, Monte Carlo columns
pne_mc,pne_mc_err alongside it.
"""
import argparse
import sys
from pathlib import Path

from steanesim.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--eps", type=float, default=2e-4)
    ap.add_argument("--t-max", type=int, default=100)
    ap.add_argument("--mc", action="store_true")
    ap.add_argument("--trials", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    out = args.outdir / "baseline.csv"
    argv = [
        "baseline", "--eps", str(args.eps), "--t-max", str(args.t_max),
        "--seed", str(args.seed), "--out", str(out),
    ]
    if args.mc:
        argv += ["--mc", "--trials", str(args.trials)]
    print(f"[baseline] -> {out}", flush=True)
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
