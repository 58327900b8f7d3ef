"""Frame propagation, noise injection and measurement semantics."""
import itertools

import numpy as np
import pytest

from steanesim.circuit import (
    CNOT_OUTCOMES,
    Circuit,
    ErrorModel,
    Frame,
    cnot,
    conjugate,
    h,
    inject_gate_error,
    inject_wait_error,
    meas_x,
    meas_z,
    prep_plus,
    prep_z,
    run_circuit,
    run_step,
)

I2 = np.eye(2)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PZ = np.array([[1, 0], [0, -1]], dtype=complex)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def dense_frame(fr: Frame, n: int) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(1, n + 1):
        b = 1 << (q - 1)
        m = np.eye(2)
        if fr.x & b:
            m = m @ PX
        if fr.z & b:
            m = PZ @ m if False else m @ PZ
        out = np.kron(out, m)
    return out


def equal_up_to_phase(a: np.ndarray, b: np.ndarray) -> bool:
    idx = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(b[idx]) < 1e-12:
        return False
    return np.allclose(a, (a[idx] / b[idx]) * b)


def test_conjugate_h_matches_unitary_oracle():
    """U P U^dagger for U = H on qubit 1 of 2, all 16 frames."""
    u = np.kron(H2, I2)
    for x, z in itertools.product(range(4), repeat=2):
        fr = Frame(x, z)
        got = conjugate(fr, h(1))
        want = u @ dense_frame(fr, 2) @ u.conj().T
        assert equal_up_to_phase(want, dense_frame(got, 2)), (x, z)


@pytest.mark.parametrize("ctrl,tgt", [(1, 2), (2, 1)])
def test_conjugate_cnot_matches_unitary_oracle(ctrl, tgt):
    """U P U^dagger for CNOT, both orientations, all 16 two-qubit frames."""
    # qubit 1 is the leftmost kron factor
    if (ctrl, tgt) == (1, 2):
        u = CX
    else:
        swap = np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
            dtype=complex,
        )
        u = swap @ CX @ swap
    for x, z in itertools.product(range(4), repeat=2):
        fr = Frame(x, z)
        got = conjugate(fr, cnot(ctrl, tgt))
        want = u @ dense_frame(fr, 2) @ u.conj().T
        assert equal_up_to_phase(want, dense_frame(got, 2)), (x, z)


def test_conjugate_rejects_non_unitary_gates():
    with pytest.raises(ValueError):
        conjugate(Frame(), meas_z(1))


def test_cnot_validation():
    with pytest.raises(ValueError):
        cnot(3, 3)


def test_circuit_step_disjointness_enforced():
    c = Circuit(live_at_start=(1, 2))
    with pytest.raises(ValueError):
        c.add_step([h(1), cnot(1, 2)])


def test_circuit_requires_live_qubits():
    c = Circuit(live_at_start=(1,))
    with pytest.raises(ValueError):
        c.add_step([h(2)])


def test_prepare_while_live_rejected():
    c = Circuit(live_at_start=(1,))
    with pytest.raises(ValueError):
        c.add_step([prep_z(1)])


def test_measurement_kills_qubit_and_prep_revives():
    c = Circuit(live_at_start=(1,))
    c.add_step([meas_z(1)])
    c.add_step([prep_plus(1)])
    assert c.n_measurements == 1
    assert c.live_before(0) == {1}
    assert c.live_before(1) == set()
    assert c.live_before(2) == {1}
    assert c.depth == 2


def test_measurement_flip_semantics():
    """Flip = 1 iff the frame anticommutes with the measured observable."""
    rng = np.random.default_rng(0)
    model = ErrorModel(0.0, 0.0)
    cases = [
        (meas_z(1), Frame(1, 0), 1),  # X flips a Z measurement
        (meas_z(1), Frame(0, 1), 0),  # Z does not
        (meas_z(1), Frame(1, 1), 1),  # Y does
        (meas_x(1), Frame(1, 0), 0),
        (meas_x(1), Frame(0, 1), 1),
        (meas_x(1), Frame(1, 1), 1),
    ]
    for gate, fr, want in cases:
        out, flips = run_step(fr, [gate], {1}, rng, model)
        assert flips == [want], (gate, fr)
        assert out.x == 0 and out.z == 0  # measured qubit leaves the frame


def test_noiseless_run_is_deterministic_identity():
    c = Circuit(live_at_start=(1, 2))
    c.add_step([h(1)])
    c.add_step([cnot(1, 2)])
    c.add_step([meas_z(2)])
    rng = np.random.default_rng(1)
    frame, flips = run_circuit(c, rng, ErrorModel(0.0, 0.0))
    assert (frame.x, frame.z) == (0, 0)
    assert flips == [0]


def test_wait_error_certain_at_eps_one():
    """eps = 1: every idle live qubit gets a nontrivial Pauli; busy ones don't."""
    rng = np.random.default_rng(2)
    model = ErrorModel(1.0, 0.0)
    for _ in range(50):
        frame, _ = run_step(Frame(), [h(1)], {1, 2}, rng, model)
        assert (frame.x | frame.z) & 0b10  # qubit 2 idled, must be hit
        assert not (frame.x | frame.z) & 0b01  # qubit 1 was busy, gamma = 0


def test_wait_error_rates_match_model():
    """Empirical X/Y/Z wait frequencies at eps = 0.3 within 3 sigma of eps/3."""
    rng = np.random.default_rng(3)
    model = ErrorModel(0.3, 0.0)
    n = 10**6
    counts = {"I": 0, "X": 0, "Y": 0, "Z": 0}
    for _ in range(n):
        fr = inject_wait_error(Frame(), 1, rng, model)
        counts[{(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(fr.x, fr.z)]] += 1
    p = 0.1
    sigma = (p * (1 - p) / n) ** 0.5
    for which in "XYZ":
        assert abs(counts[which] / n - p) < 3 * sigma, (which, counts)


def test_cnot_error_outcomes_uniform():
    """The 15 CNOT fault outcomes occur with gamma/15 each, within 4 sigma."""
    rng = np.random.default_rng(4)
    model = ErrorModel(0.0, 0.5)
    n = 3 * 10**5
    hits = {}
    for _ in range(n):
        fr = inject_gate_error(Frame(), cnot(1, 2), rng, model)
        key = (fr.x, fr.z)
        hits[key] = hits.get(key, 0) + 1
    assert len(hits) == 16  # identity plus 15 outcomes
    p = 0.5 / 15
    sigma = (p * (1 - p) / n) ** 0.5
    for xc, zc, xt, zt in CNOT_OUTCOMES:
        key = (xc | (xt << 1), zc | (zt << 1))
        assert abs(hits.get(key, 0) / n - p) < 4 * sigma, key


def test_preparations_are_noiseless():
    rng = np.random.default_rng(5)
    model = ErrorModel(0.0, 1.0)
    for _ in range(20):
        fr = inject_gate_error(Frame(), prep_z(1), rng, model)
        assert (fr.x, fr.z) == (0, 0)


def test_error_model_validation():
    with pytest.raises(ValueError):
        ErrorModel(-0.1, 0.0)
    with pytest.raises(ValueError):
        ErrorModel(0.0, 1.5)
    assert ErrorModel(2e-4, 1e-3).c_ratio == pytest.approx(0.2)
    assert ErrorModel(0.0, 0.0).noiseless


def test_dump_is_stable():
    c = Circuit()
    c.add_step([prep_z(1)])
    c.add_step([h(1)])
    assert c.dump() == "step 00: PrepZ q1\nstep 01: H q1"
