#!/usr/bin/env python3
"""Memory error threshold against gate quality C = eps / gamma.

Runs the threshold sweep and writes <outdir>/threshold.csv with columns
c,d,eps_th_lin,eps_th_cross plus per-C scaling CSVs
<outdir>/threshold_c<percent>.csv (eps,pnc,pnc_err,n). Feeds the per-quality
scaling and threshold-vs-quality figures. --smoke trims trial counts for a
quick single-core run.
"""
import argparse
import sys
from pathlib import Path

from steanesim.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--c-grid", default="0.1,0.3,0.5,0.6,0.8,1.0")
    ap.add_argument("--eps-grid", default="1e-4:1e-3:5")
    ap.add_argument("--ancilla", default="steane-par")
    ap.add_argument("--t-pre", type=int, default=8)
    ap.add_argument("--trials", type=int, default=1_000_000)
    ap.add_argument("--trials-floor-frac", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    ap.add_argument("--smoke", action="store_true",
                    help="reduced trial counts for a fast sanity run")
    args = ap.parse_args()

    if args.smoke:
        args.trials = min(args.trials, 200_000)
        args.trials_floor_frac = max(args.trials_floor_frac, 0.3)

    args.outdir.mkdir(parents=True, exist_ok=True)
    out = args.outdir / "threshold.csv"
    argv = [
        "threshold", "--ancilla", args.ancilla,
        "--c-grid", args.c_grid, "--eps-grid", args.eps_grid,
        "--t-pre", str(args.t_pre), "--trials", str(args.trials),
        "--trials-floor-frac", str(args.trials_floor_frac),
        "--seed", str(args.seed), "--out", str(out),
        "--points-out-dir", str(args.outdir),
    ]
    if args.threads is not None:
        argv += ["--threads", str(args.threads)]
    print(f"[threshold] -> {out}", flush=True)
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
