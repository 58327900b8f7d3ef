#!/usr/bin/env python3
"""Memory-regime time series for all five ancilla kinds.

Writes one CSV per ancilla: <outdir>/timeseries_<kind>.csv with columns
t,f0,f0_err,f1,f1_err,pnc,pnc_err,n. These files feed the fidelity-vs-time,
residual-weight-one-vs-time and non-correctable-vs-time figures.
"""
import argparse
import sys
from pathlib import Path

from steanesim.cli import main as cli_main

KINDS = ["simple", "shor", "steane", "steane-par", "steane-par-v"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--eps", type=float, default=2e-4)
    ap.add_argument("--gamma", type=float, default=1e-3)
    ap.add_argument("--dt", type=int, default=1)
    ap.add_argument("--t-max", type=int, default=200)
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--kinds", nargs="*", default=KINDS, choices=KINDS)
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for kind in args.kinds:
        out = args.outdir / f"timeseries_{kind.replace('-', '_')}.csv"
        argv = [
            "timeseries", "--ancilla", kind,
            "--eps", str(args.eps), "--gamma", str(args.gamma),
            "--dt", str(args.dt), "--t-max", str(args.t_max),
            "--trials", str(args.trials), "--seed", str(args.seed),
            "--out", str(out),
        ]
        if args.threads is not None:
            argv += ["--threads", str(args.threads)]
        print(f"[timeseries] {kind} -> {out}", flush=True)
        worst = max(worst, cli_main(argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
