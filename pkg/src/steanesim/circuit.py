"""Circuits with explicit time steps, Pauli-frame propagation and noise.

Gates are Clifford (H, CNOT) plus Z/X-basis preparations and measurements.
Noise follows an independent stochastic location model:

* every live qubit that is idle during a time step suffers X/Y/Z with
  probability epsilon/3 each (a *wait* location);
* a Hadamard or measurement location suffers X/Y/Z with probability
  gamma/3 each, injected after the ideal gate acts;
* a CNOT location suffers one of the 15 nontrivial two-qubit Paulis with
  probability gamma/15 each, injected after the ideal gate acts;
* preparations are noiseless events; the prepared qubit participates in
  wait/gate errors from its next location onward.

The simulated object is a Pauli *frame*: the accumulated deviation from
the ideal noiseless state, stored as (x, z) bit masks with bit q-1 for
qubit id q.  Measurement of qubit q reports a flip bit (1 iff the frame on
q anticommutes with the measured observable) and removes q from the frame.
All classical bits consumed downstream are parities whose ideal value is 0,
which is what makes the frame picture exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "Gate",
    "Circuit",
    "ErrorModel",
    "Frame",
    "prep_z",
    "prep_plus",
    "h",
    "cnot",
    "meas_z",
    "meas_x",
    "conjugate",
    "inject_wait_error",
    "inject_gate_error",
    "measure_flips",
    "run_step",
    "run_circuit",
]

PREP_Z = "PrepZ"
PREP_PLUS = "PrepPlus"
H = "H"
CNOT = "CNOT"
MEAS_Z = "MeasZ"
MEAS_X = "MeasX"

_MEAS_KINDS = (MEAS_Z, MEAS_X)
_PREP_KINDS = (PREP_Z, PREP_PLUS)

# Nontrivial two-qubit Pauli outcomes for a CNOT location, as
# (x_control, z_control, x_target, z_target) component bits.
CNOT_OUTCOMES = tuple(
    (a & 1, (a >> 1) & 1, b & 1, (b >> 1) & 1)
    for a in range(4)
    for b in range(4)
    if (a, b) != (0, 0)
)
assert len(CNOT_OUTCOMES) == 15


@dataclass(frozen=True)
class Gate:
    """One gate location: kind, qubit, and for CNOT a second (target) qubit."""

    kind: str
    q: int
    q2: Optional[int] = None

    def qubits(self) -> tuple[int, ...]:
        return (self.q,) if self.q2 is None else (self.q, self.q2)

    def __str__(self) -> str:
        if self.kind == CNOT:
            return f"CNOT q{self.q}->q{self.q2}"
        return f"{self.kind} q{self.q}"


def prep_z(q: int) -> Gate:
    return Gate(PREP_Z, q)


def prep_plus(q: int) -> Gate:
    return Gate(PREP_PLUS, q)


def h(q: int) -> Gate:
    return Gate(H, q)


def cnot(control: int, target: int) -> Gate:
    if control == target:
        raise ValueError("CNOT control and target must differ")
    return Gate(CNOT, control, target)


def meas_z(q: int) -> Gate:
    return Gate(MEAS_Z, q)


def meas_x(q: int) -> Gate:
    return Gate(MEAS_X, q)


@dataclass(frozen=True)
class ErrorModel:
    """epsilon: wait-error probability per qubit per step; gamma: per gate."""

    epsilon: float
    gamma: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")

    @property
    def c_ratio(self) -> float:
        return self.epsilon / self.gamma

    @property
    def noiseless(self) -> bool:
        return self.epsilon == 0.0 and self.gamma == 0.0


NOISELESS = ErrorModel(0.0, 0.0)


@dataclass
class Frame:
    """Accumulated Pauli deviation over the live qubits of a circuit."""

    x: int = 0
    z: int = 0

    def copy(self) -> "Frame":
        return Frame(self.x, self.z)


class Circuit:
    """An ordered list of time steps, each a qubit-disjoint set of locations.

    ``live_at_start`` lists qubits that enter the circuit already carrying
    state (their frame is an input); every other qubit must be introduced
    by a preparation location before its first use.
    """

    def __init__(self, live_at_start: Iterable[int] = ()) -> None:
        self.live_at_start: tuple[int, ...] = tuple(sorted(set(live_at_start)))
        self.steps: list[tuple[Gate, ...]] = []
        self._live: set[int] = set(self.live_at_start)
        self._dead: set[int] = set()
        self.n_measurements = 0

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(sorted(self._live | self._dead))

    def add_step(self, gates: Sequence[Gate]) -> None:
        seen: set[int] = set()
        for g in gates:
            for q in g.qubits():
                if q in seen:
                    raise ValueError(f"qubit {q} used twice in one step")
                seen.add(q)
            if g.kind in _PREP_KINDS:
                if g.q in self._live:
                    raise ValueError(f"qubit {g.q} prepared while live")
                self._live.add(g.q)
                self._dead.discard(g.q)
            else:
                for q in g.qubits():
                    if q not in self._live:
                        raise ValueError(f"qubit {q} not live for {g}")
            if g.kind in _MEAS_KINDS:
                self.n_measurements += 1
        # Measurements take effect at the end of the step.
        for g in gates:
            if g.kind in _MEAS_KINDS:
                self._live.discard(g.q)
                self._dead.add(g.q)
        self.steps.append(tuple(gates))

    @property
    def depth(self) -> int:
        return len(self.steps)

    def live_before(self, step_idx: int) -> set[int]:
        """Set of live qubits just before ``step_idx`` executes."""
        live = set(self.live_at_start)
        for step in self.steps[:step_idx]:
            for g in step:
                if g.kind in _PREP_KINDS:
                    live.add(g.q)
                elif g.kind in _MEAS_KINDS:
                    live.discard(g.q)
        return live

    def dump(self) -> str:
        """Plain-text listing, one line per time step (stable format)."""
        lines = []
        for i, step in enumerate(self.steps):
            body = " | ".join(str(g) for g in step)
            lines.append(f"step {i:02d}: {body}")
        return "\n".join(lines)


def _bit(q: int) -> int:
    return 1 << (q - 1)


def conjugate(frame: Frame, gate: Gate) -> Frame:
    """Propagate the frame through the ideal action of an H or CNOT."""
    x, z = frame.x, frame.z
    if gate.kind == H:
        b = _bit(gate.q)
        xb, zb = x & b, z & b
        x = (x & ~b) | zb
        z = (z & ~b) | xb
    elif gate.kind == CNOT:
        bc, bt = _bit(gate.q), _bit(gate.q2)
        if x & bc:
            x ^= bt
        if z & bt:
            z ^= bc
    else:
        raise ValueError(f"conjugate only applies to H/CNOT, got {gate.kind}")
    return Frame(x, z)


def inject_wait_error(frame: Frame, qubit: int, rng, model: ErrorModel) -> Frame:
    """With probability epsilon compose X/Y/Z (epsilon/3 each) on ``qubit``."""
    if model.epsilon == 0.0:
        return frame
    u = rng.random()
    if u >= model.epsilon:
        return frame
    return _apply_one_qubit_pauli(frame, qubit, int(3 * u / model.epsilon))


def inject_gate_error(frame: Frame, gate: Gate, rng, model: ErrorModel) -> Frame:
    """Depolarizing error after an ideal gate: gamma/3 (1q) or gamma/15 (CNOT)."""
    if model.gamma == 0.0 or gate.kind in _PREP_KINDS:
        return frame
    u = rng.random()
    if u >= model.gamma:
        return frame
    if gate.kind == CNOT:
        k = int(15 * u / model.gamma)
        xc, zc, xt, zt = CNOT_OUTCOMES[k]
        bc, bt = _bit(gate.q), _bit(gate.q2)
        return Frame(
            frame.x ^ (bc if xc else 0) ^ (bt if xt else 0),
            frame.z ^ (bc if zc else 0) ^ (bt if zt else 0),
        )
    return _apply_one_qubit_pauli(frame, gate.q, int(3 * u / model.gamma))


def _apply_one_qubit_pauli(frame: Frame, qubit: int, which: int) -> Frame:
    # which: 0 -> X, 1 -> Y, 2 -> Z
    b = _bit(qubit)
    x = frame.x ^ (b if which in (0, 1) else 0)
    z = frame.z ^ (b if which in (1, 2) else 0)
    return Frame(x, z)


def measure_flips(
    frame: Frame,
    qubits: Sequence[int],
    basis: str,
    rng,
    model: ErrorModel,
    live: Optional[set[int]] = None,
) -> tuple[Frame, list[int]]:
    """Measure each qubit (gamma depolarization, then ideal readout).

    Returns the frame with the measured qubits cleared and the flip bits,
    one per qubit in the given order.  A flip is 1 iff the frame on the
    qubit anticommutes with the measured observable (Z_q or X_q).
    """
    flips = []
    for q in qubits:
        if live is not None:
            if q not in live:
                raise ValueError(f"measuring dead qubit {q}")
            live.discard(q)
        gate = Gate(MEAS_Z if basis == "Z" else MEAS_X, q)
        frame = inject_gate_error(frame, gate, rng, model)
        b = _bit(q)
        if basis == "Z":
            flips.append(1 if frame.x & b else 0)
        else:
            flips.append(1 if frame.z & b else 0)
        frame = Frame(frame.x & ~b, frame.z & ~b)
    return frame, flips


def run_step(
    frame: Frame,
    step: Sequence[Gate],
    live: set[int],
    rng,
    model: ErrorModel,
) -> tuple[Frame, list[int]]:
    """Execute one time step: gates (with gate errors), then wait errors.

    Each qubit receives exactly one error opportunity: its gate's error if
    it appears in a location this step, a wait error otherwise.  Flip bits
    are reported in gate order within the step.
    """
    busy: set[int] = set()
    flips: list[int] = []
    for g in step:
        busy.update(g.qubits())
        if g.kind in (H, CNOT):
            frame = conjugate(frame, g)
            frame = inject_gate_error(frame, g, rng, model)
        elif g.kind in _PREP_KINDS:
            live.add(g.q)  # noiseless; fresh qubit enters with zero frame
        elif g.kind in _MEAS_KINDS:
            frame, bits = measure_flips(
                frame, [g.q], "Z" if g.kind == MEAS_Z else "X", rng, model, live
            )
            flips.extend(bits)
        else:
            raise ValueError(f"unknown gate kind {g.kind}")
    for q in sorted(live - busy):
        frame = inject_wait_error(frame, q, rng, model)
    return frame, flips


def run_circuit(
    circuit: Circuit,
    rng,
    model: ErrorModel,
    frame: Optional[Frame] = None,
) -> tuple[Frame, list[int]]:
    """Execute every step of the circuit; returns final frame and all flips."""
    frame = Frame() if frame is None else frame.copy()
    live = set(circuit.live_at_start)
    flips: list[int] = []
    for step in circuit.steps:
        frame, bits = run_step(frame, step, live, rng, model)
        flips.extend(bits)
    return frame, flips
