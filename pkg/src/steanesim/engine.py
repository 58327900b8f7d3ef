"""Monte Carlo estimation of F0 / F1 / P_NC, curve fits and thresholds.

Trials are independent work units.  Trial ``i`` of a run draws all its
randomness from a Philox stream seeded by ``SeedSequence(entropy=seed,
spawn_key=(i,))``, so results are fully determined by (config, seed) and
identical under any worker count or execution order; aggregation is a
commutative sum of per-checkpoint class counts.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .ancilla import AncillaKind, TrialAborted, VerificationPolicy, get_extractor
from .circuit import NOISELESS, ErrorModel
from .code import ErrorClass, classify_bits, zero_logical_encoder
from .compiled import CompiledGadget, Gadget, RandomSource
from .recovery import recover

__all__ = [
    "ExperimentConfig",
    "MetricsPoint",
    "FitResult",
    "EstimateResult",
    "run_trial",
    "estimate",
    "p_ne",
    "baseline_mc",
    "fit_linear_fidelity",
    "fit_quadratic_origin",
    "scaling_exponent",
    "threshold_linearized",
    "threshold_crossing",
    "default_threads",
]

ENCODING_MODES = ("noisy", "perfect")


@dataclass(frozen=True)
class ExperimentConfig:
    epsilon: float
    gamma: float
    ancilla: AncillaKind
    encoding: str = "noisy"
    delta_t: int = 1
    t_pre: Optional[int] = None  # wait steps before the first recovery
    t_max: int = 50
    trials: int = 100_000
    master_seed: int = 0
    max_attempts: int = 10
    on_exhaust: str = "proceed"
    noiseless_gadget: bool = False  # extraction runs with eps = gamma = 0
    shape: str = "timeseries"

    def __post_init__(self) -> None:
        if self.encoding not in ENCODING_MODES:
            raise ValueError(f"encoding must be one of {ENCODING_MODES}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.delta_t < 1:
            raise ValueError("delta_t must be >= 1")
        if self.t_pre is not None and self.t_pre < 1:
            raise ValueError("t_pre must be >= 1")

    @property
    def first_recovery_at(self) -> int:
        return self.delta_t if self.t_pre is None else self.t_pre

    def checkpoints(self) -> list[int]:
        """Wait-step counts at which a recovery runs and the frame is classified."""
        ts = []
        t = self.first_recovery_at
        while t <= self.t_max:
            ts.append(t)
            t += self.delta_t
        if not ts:
            raise ValueError("no checkpoint <= t_max; lower t_pre or raise t_max")
        return ts

    @property
    def model(self) -> ErrorModel:
        return ErrorModel(self.epsilon, self.gamma)

    @property
    def policy(self) -> VerificationPolicy:
        return VerificationPolicy(self.max_attempts, self.on_exhaust)


@dataclass(frozen=True)
class MetricsPoint:
    abscissa: float
    f0: float
    f1: float
    p_nc: float
    f0_err: float
    f1_err: float
    p_nc_err: float
    n_effective: int


@dataclass(frozen=True)
class EstimateResult:
    points: list[MetricsPoint]
    aborted: int


@dataclass(frozen=True)
class FitResult:
    a: float = 0.0
    b: float = 0.0
    d: float = 0.0
    r_squared: float = 0.0
    eps_th: float = 0.0


_CLASS_INDEX = {
    ErrorClass.CORRECT_IDENTITY: 0,
    ErrorClass.CORRECT_WEIGHT_ONE: 1,
    ErrorClass.NON_CORRECTABLE: 2,
}

_ENCODER: Optional[CompiledGadget] = None


def _encoder() -> CompiledGadget:
    global _ENCODER
    if _ENCODER is None:
        _ENCODER = CompiledGadget(Gadget(zero_logical_encoder("parallel")))
    return _ENCODER


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Per-trial random stream (the documented mixing function)."""
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(trial_index,))
    return np.random.Generator(np.random.Philox(seq))


def wait_block(
    fx: int, fz: int, steps: int, epsilon: float, rs: RandomSource
) -> tuple[int, int]:
    """Depolarizing wait noise on the 7 data qubits for ``steps`` time steps."""
    if steps <= 0 or epsilon == 0.0:
        return fx, fz
    n = 7 * steps
    p0 = (1.0 - epsilon) ** n
    if rs.uniform() < p0:
        return fx, fz
    rng = rs.rng
    while True:
        k = int(rng.binomial(n, epsilon))
        if k:
            break
    locs = (int(rng.integers(n)),) if k == 1 else rng.choice(n, size=k, replace=False)
    for loc in locs:
        b = 1 << (int(loc) % 7)
        which = int(rng.integers(3))  # 0 X, 1 Y, 2 Z
        if which < 2:
            fx ^= b
        if which > 0:
            fz ^= b
    return fx, fz


def run_trial(config: ExperimentConfig, trial_index: int) -> Optional[list[ErrorClass]]:
    """One trial: (optionally noisy) encoding, then wait / recover / classify.

    Returns the per-checkpoint classification list, or None if the trial
    was aborted by the verification policy.
    """
    rng = trial_rng(config.master_seed, trial_index)
    rs = RandomSource(rng)
    model = config.model
    gadget_model = NOISELESS if config.noiseless_gadget else model
    extractor = get_extractor(config.ancilla)
    policy = config.policy

    fx = fz = 0
    if config.encoding == "noisy":
        fx, fz, _ = _encoder().sample(model, rs)

    out: list[ErrorClass] = []
    t = 0
    try:
        for ckpt in config.checkpoints():
            fx, fz = wait_block(fx, fz, ckpt - t, config.epsilon, rs)
            t = ckpt
            fx, fz = recover(fx, fz, extractor, gadget_model, rs, policy)
            out.append(classify_bits(fx, fz))
    except TrialAborted:
        return None
    return out


def _count_range(config: ExperimentConfig, start: int, stop: int):
    n_ckpt = len(config.checkpoints())
    counts = np.zeros((n_ckpt, 3), dtype=np.int64)
    aborted = 0
    for i in range(start, stop):
        classes = run_trial(config, i)
        if classes is None:
            aborted += 1
            continue
        for j, cls in enumerate(classes):
            counts[j, _CLASS_INDEX[cls]] += 1
    return counts, aborted


def default_threads() -> int:
    env = os.environ.get("STEANESIM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def estimate(config: ExperimentConfig, threads: int = 1) -> EstimateResult:
    """Aggregate trial classifications into per-checkpoint metrics.

    The result is byte-for-byte independent of ``threads``.
    """
    n_ckpt = len(config.checkpoints())
    counts = np.zeros((n_ckpt, 3), dtype=np.int64)
    aborted = 0
    if threads <= 1 or config.trials < 2 * threads:
        counts, aborted = _count_range(config, 0, config.trials)
    else:
        chunk = max(1, math.ceil(config.trials / threads))
        ranges = [
            (i, min(i + chunk, config.trials))
            for i in range(0, config.trials, chunk)
        ]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futs = [pool.submit(_count_range, config, a, b) for a, b in ranges]
            for f in futs:
                c, ab = f.result()
                counts += c
                aborted += ab
    points = []
    for j, t in enumerate(config.checkpoints()):
        n = int(counts[j].sum())
        f0, f1, pnc = (counts[j] / n) if n else (0.0, 0.0, 0.0)
        points.append(
            MetricsPoint(
                abscissa=float(t),
                f0=float(f0),
                f1=float(f1),
                p_nc=float(pnc),
                f0_err=_binom_err(f0, n),
                f1_err=_binom_err(f1, n),
                p_nc_err=_binom_err(pnc, n),
                n_effective=n,
            )
        )
    return EstimateResult(points, aborted)


def _binom_err(p: float, n: int) -> float:
    return math.sqrt(p * (1.0 - p) / n) if n else float("nan")


# -- unencoded baseline ---------------------------------------------------


def p_ne(epsilon: float, t: int) -> float:
    """Closed-form loss probability of a bare |0> qubit after t wait steps.

    Of the three wait errors only X and Y corrupt the stored bit, hence the
    survival factor (1 - 2*epsilon/3) per step.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    if t < 0:
        raise ValueError("t must be >= 0")
    return 1.0 - (1.0 - 2.0 * epsilon / 3.0) ** t


def baseline_mc(
    epsilon: float, t_values: Sequence[int], trials: int, master_seed: int
) -> list[tuple[int, float, float]]:
    """Monte Carlo of the unencoded qubit: (t, loss fraction, stderr) rows.

    Each trial draws the first corrupting-error step from the geometric
    distribution with success probability 2*epsilon/3.
    """
    t_arr = np.asarray(sorted(t_values), dtype=np.int64)
    if epsilon == 0.0:
        return [(int(t), 0.0, 0.0) for t in t_arr]
    rng = trial_rng(master_seed, 0)
    first_loss = rng.geometric(2.0 * epsilon / 3.0, size=trials)
    lost = np.searchsorted(np.sort(first_loss), t_arr, side="right")
    out = []
    for t, k in zip(t_arr, lost):
        p = k / trials
        out.append((int(t), float(p), _binom_err(float(p), trials)))
    return out


# -- fits and thresholds --------------------------------------------------


def fit_linear_fidelity(points: Sequence[tuple[float, float]]):
    """OLS fit f0 = -A t + B; returns (A, B, r_squared, slope_stderr)."""
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    t = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    if np.ptp(t) == 0:
        raise ValueError("degenerate abscissa")
    slope, intercept = np.polyfit(t, y, 1)
    resid = y - (slope * t + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    n = len(t)
    if n > 2 and np.sum((t - t.mean()) ** 2) > 0:
        sigma2 = ss_res / (n - 2)
        slope_stderr = math.sqrt(sigma2 / float(np.sum((t - t.mean()) ** 2)))
    else:
        slope_stderr = 0.0
    return -float(slope), float(intercept), float(r2), float(slope_stderr)


def fit_quadratic_origin(points: Sequence[tuple[float, float]]) -> float:
    """Least squares of p against eps^2 through the origin: D = sum(p e^2)/sum(e^4)."""
    if len(points) < 2:
        raise ValueError("need at least 2 points")
    e = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    if np.any(e <= 0):
        raise ValueError("all eps must be positive")
    return float(np.sum(y * e**2) / np.sum(e**4))


def scaling_exponent(points: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log p against log eps."""
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    e = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    if np.any(e <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs positive data")
    slope, _ = np.polyfit(np.log(e), np.log(y), 1)
    return float(slope)


def threshold_linearized(d: float) -> float:
    """Threshold from the small-eps linearization: eps_th = 16 / (3 D)."""
    if d <= 0:
        raise ValueError("D must be positive")
    return 16.0 / (3.0 * d)


def threshold_crossing(d: float, t_pre: int) -> Optional[float]:
    """Root of D eps^2 = 1 - (1 - 2 eps/3)^t_pre on (0, 1), by bisection.

    Returns None when no crossing exists in (0, 1).
    """
    if d <= 0:
        raise ValueError("D must be positive")
    if t_pre < 1:
        raise ValueError("t_pre must be >= 1")

    def f(e: float) -> float:
        return d * e * e - p_ne(e, t_pre)

    lo, hi = 1e-12, 1.0
    if f(lo) >= 0 or f(hi) <= 0:
        return None
    while (hi - lo) > 1e-9 * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
