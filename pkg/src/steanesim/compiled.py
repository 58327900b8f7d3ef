"""Linear-map compilation of noisy gadget circuits for fast trial sampling.

Pauli frames compose by XOR and every gate here is Clifford, so the effect
of any set of injected errors on (final frame, measurement flips) is the
XOR of the effects of the individual errors, and the effect of the input
frame is linear as well.  A ``CompiledGadget`` precomputes, once per
circuit:

* for every fault location (wait, one-qubit gate/measurement, CNOT) and
  every possible Pauli outcome there, the resulting flip bits and final
  frame contribution;
* the same transfer for each X/Z input-frame component of the qubits that
  enter the circuit live.

Sampling a noisy execution then costs one uniform draw in the common
no-fault case, plus conditional binomial sampling of fault locations in
the rare faulty case.  The distribution is exactly that of the direct
step-by-step simulator in :mod:`steanesim.circuit` (tested against it).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import (
    CNOT,
    CNOT_OUTCOMES,
    H,
    MEAS_X,
    MEAS_Z,
    PREP_PLUS,
    PREP_Z,
    Circuit,
    ErrorModel,
)

__all__ = ["Gadget", "CompiledGadget", "RandomSource", "Effect"]

_PREP_KINDS = (PREP_Z, PREP_PLUS)
_MEAS_KINDS = (MEAS_Z, MEAS_X)


@dataclass(frozen=True)
class Gadget:
    """A circuit plus named parity checks over its measurement flips."""

    circuit: Circuit
    checks: dict[str, int] = field(default_factory=dict)

    def parity(self, name: str, flips: int) -> int:
        return (flips & self.checks[name]).bit_count() & 1


class RandomSource:
    """A numpy Generator with buffered uniforms for cheap single draws."""

    def __init__(self, rng: np.random.Generator, buffer_size: int = 256):
        self.rng = rng
        self._size = buffer_size
        self._buf = rng.random(buffer_size)
        self._pos = 0

    def uniform(self) -> float:
        if self._pos == self._size:
            self._buf = self.rng.random(self._size)
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return u


class Effect:
    """Contribution of one error (or input component) to the gadget output."""

    __slots__ = ("x", "z", "flips")

    def __init__(self) -> None:
        self.x = 0
        self.z = 0
        self.flips = 0


class CompiledGadget:
    def __init__(self, gadget: Gadget):
        self.gadget = gadget
        self.checks = gadget.checks
        # site class -> list of per-site outcome lists
        self.wait_sites: list[list[Effect]] = []
        self.g1_sites: list[list[Effect]] = []
        self.cnot_sites: list[list[Effect]] = []
        # fault-site bookkeeping for targeted injection in tests
        self.site_labels: dict[str, list[tuple]] = {"wait": [], "g1": [], "cnot": []}
        self.input_x: dict[int, Effect] = {}
        self.input_z: dict[int, Effect] = {}
        self._p_clean_cache: dict[tuple[float, float], float] = {}
        self._compile()

    # -- compilation ----------------------------------------------------

    def _compile(self) -> None:
        circ = self.gadget.circuit
        tracked: list[Effect] = []

        def new_effect() -> Effect:
            e = Effect()
            tracked.append(e)
            return e

        def one_qubit_outcomes(q: int) -> list[Effect]:
            b = 1 << (q - 1)
            outs = []
            for which in range(3):  # X, Y, Z
                e = new_effect()
                if which in (0, 1):
                    e.x = b
                if which in (1, 2):
                    e.z = b
                outs.append(e)
            return outs

        for q in circ.live_at_start:
            b = 1 << (q - 1)
            ex = new_effect()
            ex.x = b
            self.input_x[q] = ex
            ez = new_effect()
            ez.z = b
            self.input_z[q] = ez

        live = set(circ.live_at_start)
        meas_index = 0
        for step_idx, step in enumerate(circ.steps):
            busy: set[int] = set()
            for g in step:
                busy.update(g.qubits())
                if g.kind == H:
                    b = 1 << (g.q - 1)
                    for e in tracked:
                        xb, zb = e.x & b, e.z & b
                        e.x = (e.x & ~b) | zb
                        e.z = (e.z & ~b) | xb
                    self.g1_sites.append(one_qubit_outcomes(g.q))
                    self.site_labels["g1"].append((step_idx, g.kind, g.q))
                elif g.kind == CNOT:
                    bc, bt = 1 << (g.q - 1), 1 << (g.q2 - 1)
                    for e in tracked:
                        if e.x & bc:
                            e.x ^= bt
                        if e.z & bt:
                            e.z ^= bc
                    outs = []
                    for xc, zc, xt, zt in CNOT_OUTCOMES:
                        e = new_effect()
                        e.x = (bc if xc else 0) | (bt if xt else 0)
                        e.z = (bc if zc else 0) | (bt if zt else 0)
                        outs.append(e)
                    self.cnot_sites.append(outs)
                    self.site_labels["cnot"].append((step_idx, g.kind, (g.q, g.q2)))
                elif g.kind in _PREP_KINDS:
                    live.add(g.q)
                elif g.kind in _MEAS_KINDS:
                    # depolarization before readout, then ideal readout
                    self.g1_sites.append(one_qubit_outcomes(g.q))
                    self.site_labels["g1"].append((step_idx, g.kind, g.q))
                    b = 1 << (g.q - 1)
                    for e in tracked:
                        hit = e.x & b if g.kind == MEAS_Z else e.z & b
                        if hit:
                            e.flips |= 1 << meas_index
                        e.x &= ~b
                        e.z &= ~b
                    meas_index += 1
                    live.discard(g.q)
                else:
                    raise ValueError(f"unknown gate kind {g.kind}")
            for q in sorted(live - busy):
                self.wait_sites.append(one_qubit_outcomes(q))
                self.site_labels["wait"].append((step_idx, "Wait", q))
        self.n_measurements = meas_index
        self.n_wait = len(self.wait_sites)
        self.n_g1 = len(self.g1_sites)
        self.n_cnot = len(self.cnot_sites)

    # -- sampling --------------------------------------------------------

    def p_clean(self, model: ErrorModel) -> float:
        key = (model.epsilon, model.gamma)
        p = self._p_clean_cache.get(key)
        if p is None:
            p = (1.0 - model.epsilon) ** self.n_wait * (1.0 - model.gamma) ** (
                self.n_g1 + self.n_cnot
            )
            self._p_clean_cache[key] = p
        return p

    def transfer(self, in_x: int, in_z: int) -> tuple[int, int, int]:
        """Noiseless output (frame x, frame z, flips) for an input frame."""
        x = z = flips = 0
        b = in_x
        while b:
            low = b & -b
            e = self.input_x[low.bit_length()]
            x ^= e.x
            z ^= e.z
            flips ^= e.flips
            b ^= low
        b = in_z
        while b:
            low = b & -b
            e = self.input_z[low.bit_length()]
            x ^= e.x
            z ^= e.z
            flips ^= e.flips
            b ^= low
        return x, z, flips

    def sample(
        self, model: ErrorModel, rs: RandomSource, in_x: int = 0, in_z: int = 0
    ) -> tuple[int, int, int]:
        """One noisy execution: returns (frame x, frame z, flip bits)."""
        x, z, flips = self.transfer(in_x, in_z)
        p0 = self.p_clean(model)
        if p0 < 1.0 and rs.uniform() >= p0:
            rng = rs.rng
            eps, gam = model.epsilon, model.gamma
            while True:  # conditional on at least one fault
                kw = rng.binomial(self.n_wait, eps) if self.n_wait else 0
                k1 = rng.binomial(self.n_g1, gam) if self.n_g1 else 0
                k2 = rng.binomial(self.n_cnot, gam) if self.n_cnot else 0
                if kw or k1 or k2:
                    break
            for k, sites in ((kw, self.wait_sites), (k1, self.g1_sites), (k2, self.cnot_sites)):
                if not k:
                    continue
                if k == 1:
                    picked = (int(rng.integers(len(sites))),)
                else:
                    picked = rng.choice(len(sites), size=k, replace=False)
                for i in picked:
                    outs = sites[int(i)]
                    e = outs[int(rng.integers(len(outs)))]
                    x ^= e.x
                    z ^= e.z
                    flips ^= e.flips
        return x, z, flips

    def apply_fault(
        self,
        cls: str,
        site: int,
        outcome: int,
        in_x: int = 0,
        in_z: int = 0,
    ) -> tuple[int, int, int]:
        """Deterministic output with exactly one injected fault (for tests)."""
        x, z, flips = self.transfer(in_x, in_z)
        sites = {"wait": self.wait_sites, "g1": self.g1_sites, "cnot": self.cnot_sites}[cls]
        e = sites[site][outcome]
        return x ^ e.x, z ^ e.z, flips ^ e.flips
