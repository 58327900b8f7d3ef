"""Experiment engine: baseline, estimators, fits, thresholds, determinism."""
import itertools
import math

import numpy as np
import pytest
import scipy.optimize

from steanesim.ancilla import AncillaKind
from steanesim.code import ErrorClass, classify_bits
from steanesim.engine import (
    ExperimentConfig,
    baseline_mc,
    estimate,
    fit_linear_fidelity,
    fit_quadratic_origin,
    p_ne,
    run_trial,
    scaling_exponent,
    threshold_crossing,
    threshold_linearized,
    trial_rng,
)


# -- unencoded baseline ----------------------------------------------------


def test_p_ne_analytic_value():
    assert p_ne(2e-4, 8) == pytest.approx(1.06617e-3, rel=1e-4)
    assert p_ne(0.0, 100) == 0.0
    assert p_ne(1.0, 1) == pytest.approx(2.0 / 3.0)


def test_p_ne_validation():
    with pytest.raises(ValueError):
        p_ne(-0.1, 1)
    with pytest.raises(ValueError):
        p_ne(0.1, -1)


def test_baseline_mc_matches_formula_within_3_sigma():
    eps, trials = 2e-4, 10**6
    rows = baseline_mc(eps, range(1, 101), trials, master_seed=123)
    assert len(rows) == 100
    for t, p_hat, err in rows:
        p = p_ne(eps, t)
        sigma = math.sqrt(p * (1 - p) / trials)
        assert abs(p_hat - p) < 3 * sigma, (t, p_hat, p)


def test_baseline_mc_zero_eps():
    assert baseline_mc(0.0, [1, 5], 100, 0) == [(1, 0.0, 0.0), (5, 0.0, 0.0)]


# -- trial running -----------------------------------------------------------


@pytest.mark.parametrize("encoding", ["noisy", "perfect"])
def test_zero_noise_trials_are_identity(encoding):
    for kind in (AncillaKind.SIMPLE, AncillaKind.STEANE_PAR_V):
        cfg = ExperimentConfig(
            epsilon=0.0, gamma=0.0, ancilla=kind, encoding=encoding,
            delta_t=10, t_max=50, trials=1, master_seed=0,
        )
        for i in range(20):
            classes = run_trial(cfg, i)
            assert classes == [ErrorClass.CORRECT_IDENTITY] * 5


def test_checkpoints_and_t_pre():
    cfg = ExperimentConfig(1e-4, 1e-4, AncillaKind.SIMPLE, delta_t=20, t_max=100)
    assert cfg.checkpoints() == [20, 40, 60, 80, 100]
    cfg = ExperimentConfig(
        1e-4, 1e-4, AncillaKind.SIMPLE, delta_t=5, t_pre=8, t_max=20
    )
    assert cfg.first_recovery_at == 8
    assert cfg.checkpoints() == [8, 13, 18]
    with pytest.raises(ValueError):
        ExperimentConfig(
            1e-4, 1e-4, AncillaKind.SIMPLE, t_pre=60, t_max=50
        ).checkpoints()


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(1e-4, 1e-4, AncillaKind.SIMPLE, encoding="magic")
    with pytest.raises(ValueError):
        ExperimentConfig(1e-4, 1e-4, AncillaKind.SIMPLE, trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig(1e-4, 1e-4, AncillaKind.SIMPLE, delta_t=0)


def test_estimate_thread_count_invariance():
    """Identical aggregate metrics for 1 and 3 workers (same seed)."""
    cfg = ExperimentConfig(
        epsilon=1e-3, gamma=1e-3, ancilla=AncillaKind.SIMPLE,
        delta_t=2, t_max=6, trials=3000, master_seed=42,
    )
    seq = estimate(cfg, threads=1)
    par = estimate(cfg, threads=3)
    assert seq == par


def test_estimate_counts_aborted_trials():
    cfg = ExperimentConfig(
        epsilon=0.3, gamma=0.3, ancilla=AncillaKind.STEANE_PAR_V,
        delta_t=1, t_max=1, trials=30, master_seed=0,
        max_attempts=1, on_exhaust="abort",
    )
    res = estimate(cfg, threads=1)
    assert res.aborted > 0
    assert res.points[0].n_effective == cfg.trials - res.aborted


def test_trial_rng_streams_are_distinct_and_reproducible():
    a = trial_rng(5, 0).random(4)
    b = trial_rng(5, 1).random(4)
    a2 = trial_rng(5, 0).random(4)
    assert not np.allclose(a, b)
    assert np.allclose(a, a2)


# -- convolution oracle ------------------------------------------------------


def _wait_channel_marginal(eps: float, t: int) -> tuple[float, float]:
    """(P_identity, P_each_pauli) for one qubit after t depolarizing steps."""
    lam = (1.0 - 4.0 * eps / 3.0) ** t
    return 0.25 + 0.75 * lam, 0.25 - 0.25 * lam


def test_noiseless_gadget_pnc_matches_convolution_oracle():
    """Perfect encoding + noiseless extraction: p_nc at the first checkpoint
    equals the exact convolution of per-qubit wait channels."""
    eps, t = 0.05, 5
    p_i, p_p = _wait_channel_marginal(eps, t)
    want = 0.0
    for pattern in itertools.product(range(4), repeat=7):  # 0 I, 1 X, 2 Y, 3 Z
        fx = fz = 0
        prob = 1.0
        for q, w in enumerate(pattern):
            prob *= p_i if w == 0 else p_p
            if w in (1, 2):
                fx |= 1 << q
            if w in (2, 3):
                fz |= 1 << q
        if classify_bits(fx, fz) is ErrorClass.NON_CORRECTABLE:
            want += prob

    trials = 200_000
    cfg = ExperimentConfig(
        epsilon=eps, gamma=0.0, ancilla=AncillaKind.SIMPLE, encoding="perfect",
        delta_t=t, t_max=t, trials=trials, master_seed=9, noiseless_gadget=True,
    )
    res = estimate(cfg, threads=1)
    got = res.points[0].p_nc
    sigma = math.sqrt(want * (1 - want) / trials)
    assert abs(got - want) < 4 * sigma, (got, want)


# -- fits and thresholds -----------------------------------------------------


def test_fit_linear_fidelity_recovers_known_slope():
    rng = np.random.default_rng(0)
    a_true, b_true, noise = 3e-4, 0.98, 5e-5
    pts = [(t, b_true - a_true * t + rng.normal(0, noise)) for t in range(1, 201)]
    a, b, r2, a_err = fit_linear_fidelity(pts)
    assert abs(a - a_true) < 3 * a_err
    assert b == pytest.approx(b_true, abs=1e-3)
    assert r2 > 0.99


def test_fit_linear_fidelity_validation():
    with pytest.raises(ValueError):
        fit_linear_fidelity([(1, 1.0), (2, 0.9)])
    with pytest.raises(ValueError):
        fit_linear_fidelity([(1, 1.0), (1, 0.9), (1, 0.8)])


def test_fit_quadratic_origin_exact_on_quadratic_data():
    d = 5729.543
    pts = [(e, d * e * e) for e in np.geomspace(1e-4, 1e-3, 5)]
    assert fit_quadratic_origin(pts) == pytest.approx(d, rel=1e-12)
    with pytest.raises(ValueError):
        fit_quadratic_origin([(0.0, 0.0), (1e-4, 1.0)])


def test_scaling_exponent_on_power_laws():
    for k in (1.0, 2.0):
        pts = [(e, 3.0 * e**k) for e in np.geomspace(1e-4, 1e-3, 5)]
        assert scaling_exponent(pts) == pytest.approx(k, rel=1e-9)
    with pytest.raises(ValueError):
        scaling_exponent([(1e-4, 0.0), (2e-4, 1.0), (3e-4, 1.0)])


def test_threshold_linearized_known_value():
    # eps_th = 16 / (3 D) at a representative fitted D
    assert threshold_linearized(3368.333) == pytest.approx(1.58338e-3, rel=1e-4)
    with pytest.raises(ValueError):
        threshold_linearized(0.0)


def test_threshold_crossing_matches_brentq_oracle():
    for d, t_pre in ((3368.333, 8), (41143.425, 8), (5729.543, 8)):
        got = threshold_crossing(d, t_pre)
        want = scipy.optimize.brentq(
            lambda e: d * e * e - p_ne(e, t_pre), 1e-12, 1.0, xtol=1e-15
        )
        assert got == pytest.approx(want, rel=1e-6)


def test_threshold_crossing_closed_form_case():
    # t_pre = 1: D e^2 = 2e/3 crosses at e = 2/(3D); pick D = 16/3 -> e = 1/8
    got = threshold_crossing(16.0 / 3.0, 1)
    assert got == pytest.approx(0.125, rel=1e-6)


def test_threshold_crossing_none_when_no_crossing():
    assert threshold_crossing(1e-6, 1) is None
