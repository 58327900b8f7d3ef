#!/usr/bin/env python3
"""Non-correctable probability against eps at fixed C = eps/gamma.

One CSV per ancilla kind: <outdir>/sweep_eps_<kind>.csv with columns
eps,pnc,pnc_err,n; the sibling manifest carries the fitted quadratic
coefficient D and the log-log exponent. Feeds the scaling figures.
"""
import argparse
import sys
from pathlib import Path

from steanesim.cli import main as cli_main

KINDS = ["simple", "shor", "steane", "steane-par"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--eps-grid", default="1e-4:1e-3:5")
    ap.add_argument("--c-ratio", type=float, default=0.5)
    ap.add_argument("--t-pre", type=int, default=8)
    ap.add_argument("--trials", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--kinds", nargs="*", default=KINDS,
                    choices=KINDS + ["steane-par-v"])
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for kind in args.kinds:
        out = args.outdir / f"sweep_eps_{kind.replace('-', '_')}.csv"
        argv = [
            "sweep-eps", "--ancilla", kind,
            "--eps-grid", args.eps_grid, "--c-ratio", str(args.c_ratio),
            "--t-pre", str(args.t_pre), "--trials", str(args.trials),
            "--seed", str(args.seed), "--out", str(out),
        ]
        if args.threads is not None:
            argv += ["--threads", str(args.threads)]
        print(f"[sweep-eps] {kind} -> {out}", flush=True)
        worst = max(worst, cli_main(argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
