"""Command-line entry point: run experiments, emit CSV results + manifest.

Commands
--------
timeseries  F0/F1/P_NC against wait steps t      -> t,f0,f0_err,f1,f1_err,pnc,pnc_err,n
sweep-eps   P_NC against eps at fixed C = eps/g  -> eps,pnc,pnc_err,n   (D, exponent in manifest)
sweep-dt    P_NC against recovery spacing dt     -> dt,pnc,pnc_err,n
threshold   D(C) and eps_th(C) over a C grid     -> c,d,eps_th_lin,eps_th_cross
baseline    closed-form (and optional MC) P_NE   -> t,pne[,pne_mc,pne_mc_err]

Every output CSV gets a sibling manifest ``<out>.manifest.json`` with the
fully resolved configuration, seed, version, wall-clock duration and
aborted-trial count.  Configuration may also be supplied as a JSON file via
``--config`` (keys mirror flag names with dashes replaced by underscores);
explicit flags win on conflict.

Exit codes: 0 success; 1 runtime failure; 2 usage error; 3 the run
completed but some trials were aborted by the verification policy.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .ancilla import AncillaKind
from .engine import (
    ExperimentConfig,
    baseline_mc,
    default_threads,
    estimate,
    fit_quadratic_origin,
    p_ne,
    scaling_exponent,
    threshold_crossing,
    threshold_linearized,
)

ANCILLA_BY_NAME = {k.cli_name: k for k in AncillaKind}

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_ABORTED = 3


def derive_seed(master_seed: int, *key: int) -> int:
    """Stable sub-seed for one point of a sweep."""
    seq = np.random.SeedSequence(entropy=(master_seed, *key))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def parse_grid(text: str) -> list[float]:
    """Comma list of values, or ``lo:hi:n`` for n log-spaced points."""
    if ":" in text:
        lo, hi, n = text.split(":")
        pts = np.geomspace(float(lo), float(hi), int(n))
        return [float(p) for p in pts]
    vals = [float(v) for v in text.split(",") if v.strip()]
    return vals


def parse_int_grid(text: str) -> list[int]:
    if ":" in text:
        lo, hi, n = (int(v) for v in text.split(":"))
        pts = np.unique(np.rint(np.geomspace(lo, hi, n)).astype(int))
        return [int(p) for p in pts]
    return [int(v) for v in text.split(",") if v.strip()]


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def write_manifest(path: Path, payload: dict) -> None:
    with open(Path(str(path) + ".manifest.json"), "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _merge_config_file(args: argparse.Namespace, parser: argparse.ArgumentParser):
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        file_cfg = json.load(fh)
    for key, value in file_cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            parser.error(f"unknown config key {key!r}")
        if getattr(args, attr) is None:
            setattr(args, attr, value)


def _resolve_defaults(args: argparse.Namespace, defaults: dict) -> None:
    for key, value in defaults.items():
        if getattr(args, key) is None:
            setattr(args, key, value)


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--out", type=str, default=None, help="output CSV path")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--config", type=str, default=None, help="JSON config file")
    p.add_argument("--max-attempts", type=int, default=None)
    p.add_argument(
        "--on-exhaust", choices=["proceed", "abort"], default=None,
        help="verification-retry exhaustion policy",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steanesim", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("timeseries", help="F0/F1/P_NC against wait steps")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--ancilla", choices=sorted(ANCILLA_BY_NAME), default=None)
    p.add_argument("--dt", type=int, default=None)
    p.add_argument("--t-pre", type=int, default=None, help="first recovery time (default dt)")
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--encoding", choices=["noisy", "perfect"], default=None)
    _common_flags(p)

    p = sub.add_parser("sweep-eps", help="P_NC against eps at fixed C")
    p.add_argument("--eps-grid", type=str, default=None, help="comma list or lo:hi:n")
    p.add_argument("--c-ratio", type=float, default=None)
    p.add_argument("--ancilla", choices=sorted(ANCILLA_BY_NAME), default=None)
    p.add_argument("--t-pre", type=int, default=None)
    p.add_argument("--encoding", choices=["noisy", "perfect"], default=None)
    p.add_argument(
        "--trials-floor-frac", type=float, default=None,
        help="per-point trials scale as (eps_min/eps)^2, floored at this fraction",
    )
    _common_flags(p)

    p = sub.add_parser("sweep-dt", help="P_NC against recovery spacing dt")
    p.add_argument("--dt-grid", type=str, default=None, help="comma list or lo:hi:n")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--c-ratio", type=float, default=None)
    p.add_argument("--ancilla", choices=sorted(ANCILLA_BY_NAME), default=None)
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--encoding", choices=["noisy", "perfect"], default=None)
    _common_flags(p)

    p = sub.add_parser("threshold", help="D(C) fits and eps_th(C)")
    p.add_argument("--c-grid", type=str, default=None, help="comma list of C values")
    p.add_argument("--eps-grid", type=str, default=None)
    p.add_argument("--ancilla", choices=sorted(ANCILLA_BY_NAME), default=None)
    p.add_argument("--t-pre", type=int, default=None)
    p.add_argument("--trials-floor-frac", type=float, default=None)
    p.add_argument(
        "--points-out-dir", type=str, default=None,
        help="also write per-C point CSVs (eps,pnc,pnc_err,n) into this directory",
    )
    _common_flags(p)

    p = sub.add_parser("baseline", help="unencoded-qubit loss probability")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--mc", action="store_true", help="add a Monte Carlo column")
    _common_flags(p)

    return parser


def _point_trials(trials: int, eps_min: float, eps: float, floor_frac: float) -> int:
    scaled = int(np.ceil(trials * (eps_min / eps) ** 2))
    return max(scaled, int(np.ceil(trials * floor_frac)), 1)


def _base_manifest(args, command: str, duration: float, aborted: int) -> dict:
    cfg = {
        k: v for k, v in vars(args).items() if k not in ("command", "config", "out")
    }
    return {
        "command": command,
        "config": cfg,
        "master_seed": args.seed,
        "version": __version__,
        "duration_seconds": duration,
        "aborted_trials": aborted,
    }


def _run_sweep_point(args, eps: float, gamma: float, trials: int, seed: int,
                     t_pre: int, encoding: str) -> tuple:
    config = ExperimentConfig(
        epsilon=eps,
        gamma=gamma,
        ancilla=ANCILLA_BY_NAME[args.ancilla],
        encoding=encoding,
        delta_t=t_pre,
        t_pre=t_pre,
        t_max=t_pre,
        trials=trials,
        master_seed=seed,
        max_attempts=args.max_attempts,
        on_exhaust=args.on_exhaust,
        shape="eps_sweep",
    )
    res = estimate(config, threads=args.threads)
    return res.points[0], res.aborted


def cmd_timeseries(args) -> int:
    config = ExperimentConfig(
        epsilon=args.eps,
        gamma=args.gamma,
        ancilla=ANCILLA_BY_NAME[args.ancilla],
        encoding=args.encoding,
        delta_t=args.dt,
        t_pre=args.t_pre,
        t_max=args.t_max,
        trials=args.trials,
        master_seed=args.seed,
        max_attempts=args.max_attempts,
        on_exhaust=args.on_exhaust,
        shape="timeseries",
    )
    start = time.monotonic()
    res = estimate(config, threads=args.threads)
    rows = [
        (int(p.abscissa), p.f0, p.f0_err, p.f1, p.f1_err, p.p_nc, p.p_nc_err, p.n_effective)
        for p in res.points
    ]
    out = Path(args.out)
    write_csv(out, ["t", "f0", "f0_err", "f1", "f1_err", "pnc", "pnc_err", "n"], rows)
    write_manifest(out, _base_manifest(args, "timeseries", time.monotonic() - start, res.aborted))
    return EXIT_ABORTED if res.aborted else EXIT_OK


def cmd_sweep_eps(args) -> int:
    grid = sorted(parse_grid(args.eps_grid)) if args.eps_grid else []
    if not grid:
        raise SystemExit("sweep-eps: --eps-grid must name at least one value")
    start = time.monotonic()
    rows = []
    aborted = 0
    eps_min = grid[0]
    for i, eps in enumerate(grid):
        trials = _point_trials(args.trials, eps_min, eps, args.trials_floor_frac)
        point, ab = _run_sweep_point(
            args, eps, eps / args.c_ratio, trials,
            derive_seed(args.seed, 1, i), args.t_pre, args.encoding,
        )
        aborted += ab
        rows.append((eps, point.p_nc, point.p_nc_err, point.n_effective))
    out = Path(args.out)
    write_csv(out, ["eps", "pnc", "pnc_err", "n"], rows)
    manifest = _base_manifest(args, "sweep-eps", time.monotonic() - start, aborted)
    positive = [(e, p) for e, p, *_ in rows if p > 0]
    manifest["fit"] = {
        "d": fit_quadratic_origin([(e, p) for e, p, *_ in rows]),
        "exponent": scaling_exponent(positive) if len(positive) >= 3 else None,
    }
    write_manifest(out, manifest)
    return EXIT_ABORTED if aborted else EXIT_OK


def cmd_sweep_dt(args) -> int:
    grid = parse_int_grid(args.dt_grid) if args.dt_grid else []
    if not grid:
        raise SystemExit("sweep-dt: --dt-grid must name at least one value")
    start = time.monotonic()
    rows = []
    aborted = 0
    for i, dt in enumerate(grid):
        config = ExperimentConfig(
            epsilon=args.eps,
            gamma=args.eps / args.c_ratio,
            ancilla=ANCILLA_BY_NAME[args.ancilla],
            encoding=args.encoding,
            delta_t=dt,
            t_max=args.t_max,
            trials=args.trials,
            master_seed=derive_seed(args.seed, 2, i),
            max_attempts=args.max_attempts,
            on_exhaust=args.on_exhaust,
            shape="dt_sweep",
        )
        res = estimate(config, threads=args.threads)
        aborted += res.aborted
        last = res.points[-1]  # final checkpoint <= t_max
        rows.append((dt, last.p_nc, last.p_nc_err, last.n_effective))
    out = Path(args.out)
    write_csv(out, ["dt", "pnc", "pnc_err", "n"], rows)
    write_manifest(out, _base_manifest(args, "sweep-dt", time.monotonic() - start, aborted))
    return EXIT_ABORTED if aborted else EXIT_OK


def cmd_threshold(args) -> int:
    c_grid = parse_grid(args.c_grid) if args.c_grid else []
    eps_grid = sorted(parse_grid(args.eps_grid)) if args.eps_grid else []
    if not c_grid or not eps_grid:
        raise SystemExit("threshold: --c-grid and --eps-grid are required")
    start = time.monotonic()
    rows = []
    aborted = 0
    eps_min = eps_grid[0]
    for ci, c in enumerate(c_grid):
        pts = []
        for i, eps in enumerate(eps_grid):
            trials = _point_trials(args.trials, eps_min, eps, args.trials_floor_frac)
            point, ab = _run_sweep_point(
                args, eps, eps / c, trials,
                derive_seed(args.seed, 3, ci, i), args.t_pre, "perfect",
            )
            aborted += ab
            pts.append((eps, point.p_nc, point.p_nc_err, point.n_effective))
        if args.points_out_dir:
            pdir = Path(args.points_out_dir)
            pdir.mkdir(parents=True, exist_ok=True)
            write_csv(
                pdir / f"threshold_c{int(round(c * 100)):03d}.csv",
                ["eps", "pnc", "pnc_err", "n"], pts,
            )
        pts = [(e, p) for e, p, *_ in pts]
        d = fit_quadratic_origin(pts)
        lin = threshold_linearized(d) if d > 0 else float("nan")
        cross = threshold_crossing(d, args.t_pre) if d > 0 else None
        rows.append((c, d, lin, float("nan") if cross is None else cross))
    out = Path(args.out)
    write_csv(out, ["c", "d", "eps_th_lin", "eps_th_cross"], rows)
    write_manifest(out, _base_manifest(args, "threshold", time.monotonic() - start, aborted))
    return EXIT_ABORTED if aborted else EXIT_OK


def cmd_baseline(args) -> int:
    start = time.monotonic()
    ts = list(range(1, args.t_max + 1))
    if args.mc:
        mc = baseline_mc(args.eps, ts, args.trials, args.seed)
        rows = [(t, p_ne(args.eps, t), pm, err) for (t, pm, err) in mc]
        header = ["t", "pne", "pne_mc", "pne_mc_err"]
    else:
        rows = [(t, p_ne(args.eps, t)) for t in ts]
        header = ["t", "pne"]
    out = Path(args.out)
    write_csv(out, header, rows)
    write_manifest(out, _base_manifest(args, "baseline", time.monotonic() - start, 0))
    return EXIT_OK


_DEFAULTS_COMMON = {
    "seed": 0,
    "threads": None,  # resolved to default_threads() below
    "max_attempts": 10,
    "on_exhaust": "proceed",
}

_DEFAULTS = {
    "timeseries": {
        "eps": 2e-4, "gamma": 1e-3, "ancilla": "steane-par", "dt": 1,
        "t_pre": None, "t_max": 50, "encoding": "noisy", "trials": 100_000,
        "out": "timeseries.csv",
    },
    "sweep-eps": {
        "eps_grid": "1e-4:1e-3:5", "c_ratio": 0.5, "ancilla": "steane-par",
        "t_pre": 8, "encoding": "perfect", "trials": 1_000_000,
        "trials_floor_frac": 0.02, "out": "sweep_eps.csv",
    },
    "sweep-dt": {
        "dt_grid": "1,10,20,40,70,100,150,200", "eps": 1.25e-4, "c_ratio": 0.9,
        "ancilla": "simple", "t_max": 1000, "encoding": "perfect",
        "trials": 20_000, "out": "sweep_dt.csv",
    },
    "threshold": {
        "c_grid": "0.1,0.3,0.5,0.6,0.8,1.0", "eps_grid": "1e-4:1e-3:5",
        "ancilla": "steane-par", "t_pre": 8, "trials": 1_000_000,
        "trials_floor_frac": 0.1, "out": "threshold.csv",
    },
    "baseline": {
        "eps": 2e-4, "t_max": 100, "trials": 1_000_000, "out": "baseline.csv",
    },
}

_HANDLERS = {
    "timeseries": cmd_timeseries,
    "sweep-eps": cmd_sweep_eps,
    "sweep-dt": cmd_sweep_dt,
    "threshold": cmd_threshold,
    "baseline": cmd_baseline,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _merge_config_file(args, parser)
    _resolve_defaults(args, _DEFAULTS_COMMON | _DEFAULTS[args.command])
    if args.threads is None:
        args.threads = default_threads()
    try:
        return _HANDLERS[args.command](args)
    except SystemExit:
        raise
    except (ValueError, OSError) as exc:
        print(f"steanesim: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
