#!/usr/bin/env python3
"""Non-correctable probability against recovery period for the bare ancilla.

For each eps in the list (gamma = eps / c_ratio), sweeps the recovery period
over the grid at fixed final time and writes
<outdir>/sweep_dt_eps<eps>.csv with columns dt,pnc,pnc_err,n. Feeds the
recovery-period optimisation figure.
"""
import argparse
import sys
from pathlib import Path

from steanesim.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--eps-list", type=float, nargs="*",
                    default=[1.25e-4, 2.5e-4, 5e-4, 1e-3])
    ap.add_argument("--c-ratio", type=float, default=0.9)
    ap.add_argument("--ancilla", default="simple")
    ap.add_argument("--dt-grid", default="1,10,20,40,70,100,150,200")
    ap.add_argument("--t-max", type=int, default=1000)
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for eps in args.eps_list:
        out = args.outdir / f"sweep_dt_eps{eps:g}.csv"
        argv = [
            "sweep-dt", "--ancilla", args.ancilla,
            "--eps", str(eps), "--c-ratio", str(args.c_ratio),
            "--dt-grid", args.dt_grid, "--t-max", str(args.t_max),
            "--trials", str(args.trials), "--seed", str(args.seed),
            "--out", str(out),
        ]
        if args.threads is not None:
            argv += ["--threads", str(args.threads)]
        print(f"[sweep-dt] eps={eps:g} -> {out}", flush=True)
        worst = max(worst, cli_main(argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
