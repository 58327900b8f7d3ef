"""The five ancilla-based syndrome-extraction gadgets.

Kinds (CLI names in parentheses):

1. SIMPLE (``simple``) - three bare ancilla qubits per sector, no
   verification, one syndrome per recovery.  Each ancilla touches four
   data qubits, so it is not fault tolerant.
2. SHOR (``shor``) - per generator, a four-qubit cat state plus one
   verification qubit; the cat is rebuilt until the verification
   measurement accepts.
3. STEANE (``steane``) - logical-plus / logical-zero ancilla blocks built
   with the sequential (depth-10) encoder; each block is verified against
   the error type that would propagate into the data (phase errors of the
   plus block, bit errors of the zero block).
4. STEANE_PAR (``steane-par``) - same as 3 with the parallel (depth-4)
   encoder schedule.
5. STEANE_PAR_V (``steane-par-v``) - same as 4 with both blocks verified
   against bit *and* phase errors.

Ancilla preparation (including verification retries) is *offline*: the
data clock only advances during coupling and measurement steps of a
gadget, so rejected ancillas never charge wait errors to the data block.

Qubit ids: data 1..7 everywhere; ancilla blocks use disjoint higher ids so
prepared-frame masks feed straight into the online gadget.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .circuit import Circuit, ErrorModel, Frame, cnot, h, meas_x, meas_z, prep_plus, prep_z, run_circuit
from .code import N, ROW_MASKS, ROW_SUPPORTS, Syndrome
from .compiled import CompiledGadget, Gadget, RandomSource

__all__ = [
    "AncillaKind",
    "VerificationPolicy",
    "TrialAborted",
    "Extractor",
    "get_extractor",
    "DATA_MASK",
]

DATA_MASK = (1 << N) - 1

# Block base offsets: code qubit j of a block lives at id base + j.
A_BASE = 7  # X-error-syndrome ancilla block (logical plus)
AP_BASE = 14  # Z-error-syndrome ancilla block (logical zero)
V_BASE = 21  # verification block, only alive inside prep gadgets


class AncillaKind(enum.Enum):
    SIMPLE = 1
    SHOR = 2
    STEANE = 3
    STEANE_PAR = 4
    STEANE_PAR_V = 5

    @property
    def repeats(self) -> int:
        return 1 if self is AncillaKind.SIMPLE else 3

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]


_CLI_NAMES = {
    AncillaKind.SIMPLE: "simple",
    AncillaKind.SHOR: "shor",
    AncillaKind.STEANE: "steane",
    AncillaKind.STEANE_PAR: "steane-par",
    AncillaKind.STEANE_PAR_V: "steane-par-v",
}


@dataclass(frozen=True)
class VerificationPolicy:
    max_attempts: int = 10
    on_exhaust: str = "proceed"  # or "abort"

    def __post_init__(self) -> None:
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")
        if self.on_exhaust not in ("proceed", "abort"):
            raise ValueError("on_exhaust must be 'proceed' or 'abort'")


DEFAULT_POLICY = VerificationPolicy()


class TrialAborted(Exception):
    """Raised when ancilla verification exhausts retries under 'abort'."""


# -- simple ancilla (kind 1) --------------------------------------------

# Per-generator coupling order chosen so that each column (time step)
# touches three distinct data qubits.  Every row is a permutation of the
# corresponding generator support.
_SIMPLE_SCHEDULE = (
    (7, 1, 3, 5),
    (2, 7, 6, 3),
    (4, 5, 7, 6),
)


def build_simple_gadget() -> Gadget:
    anc_z = (8, 9, 10)  # X-error syndrome, prepared in |0>
    anc_x = (11, 12, 13)  # Z-error syndrome, prepared in |+>
    c = Circuit(live_at_start=range(1, N + 1))
    c.add_step([prep_z(a) for a in anc_z])
    for col in range(4):
        c.add_step([cnot(_SIMPLE_SCHEDULE[i][col], anc_z[i]) for i in range(3)])
    c.add_step([meas_z(a) for a in anc_z])
    c.add_step([prep_plus(a) for a in anc_x])
    for col in range(4):
        c.add_step([cnot(anc_x[i], _SIMPLE_SCHEDULE[i][col]) for i in range(3)])
    c.add_step([meas_x(a) for a in anc_x])
    checks = {f"s_z{i}": 1 << i for i in range(3)}
    checks |= {f"s_x{i}": 1 << (3 + i) for i in range(3)}
    return Gadget(c, checks)


# -- Shor cat-state ancilla (kind 2) ------------------------------------


def shor_cat_ids(gen: int) -> tuple[tuple[int, int, int, int], int]:
    """(cat qubit ids, verification qubit id) for generator ``gen`` (0..5)."""
    base = 8 + 5 * gen
    return (base, base + 1, base + 2, base + 3), base + 4


def build_shor_prep_gadget(gen: int) -> Gadget:
    """Verified 4-cat for generator ``gen``, in the basis matched to its use.

    X-sector cats (generators 3-5, CNOT controls into the data) use the
    standard construction.  Z-sector cats (generators 0-2) are CNOT
    *targets* of the data and measured in Z, through which cat Z errors
    land on data; the standard construction turns single Z faults into Z
    pairs, which stabilize the cat and escape any verification.  Those
    cats are therefore built directly in the conjugate basis - the
    Hadamard conjugate of the standard circuit (plus preparations,
    reversed CNOTs, X-basis verification readout) - where single faults
    only produce X pairs (even measurement-flip parity, harmless) or
    patterns the verification qubit rejects.
    """
    (c1, c2, c3, c4), v = shor_cat_ids(gen)
    c = Circuit()
    if gen < 3:
        c.add_step([prep_plus(q) for q in (c1, c2, c3, c4, v)])
        c.add_step([h(c1)])
        c.add_step([cnot(c2, c1)])
        c.add_step([cnot(c3, c1), cnot(c4, c2)])
        c.add_step([cnot(v, c1)])
        c.add_step([cnot(v, c4)])
        c.add_step([meas_x(v)])
    else:
        c.add_step([prep_z(q) for q in (c1, c2, c3, c4, v)])
        c.add_step([h(c1)])
        c.add_step([cnot(c1, c2)])
        c.add_step([cnot(c1, c3), cnot(c2, c4)])
        c.add_step([cnot(c1, v)])
        c.add_step([cnot(c4, v)])
        c.add_step([meas_z(v)])
    return Gadget(c, {"verify": 1})


def build_shor_online_gadget(gen: int | None, prev: int | None) -> Gadget:
    """One pipelined step: couple generator ``gen``'s cat, read out ``prev``'s.

    Generators 0-2 extract the X-error syndrome (cats are CNOT targets,
    measured in Z); generators 3-5 extract the Z-error syndrome (cats are
    CNOT controls, measured in X).  Cat qubit k pairs with the k-th
    smallest support qubit of its generator.

    The cat factory delivers each cat just in time, and the readout of the
    previous generator's cat shares a time step with the next coupling, so
    the data block never idles through a cat measurement.  A trailing
    measurement-only gadget (``gen=None``) closes the pipeline.
    """
    live = list(range(1, N + 1))
    gates = []
    checks: dict[str, int] = {}
    if gen is not None:
        cats, _ = shor_cat_ids(gen)
        live += list(cats)
        support = ROW_SUPPORTS[gen % 3]
        if gen < 3:
            gates += [cnot(dq, ck) for dq, ck in zip(support, cats)]
        else:
            gates += [cnot(ck, dq) for dq, ck in zip(support, cats)]
    if prev is not None:
        pcats, _ = shor_cat_ids(prev)
        live += list(pcats)
        if prev < 3:
            gates += [meas_z(ck) for ck in pcats]
            checks[f"s_z{prev}"] = 0b1111
        else:
            gates += [meas_x(ck) for ck in pcats]
            checks[f"s_x{prev - 3}"] = 0b1111
    c = Circuit(live_at_start=live)
    c.add_step(gates)
    return Gadget(c, checks)


# -- Steane logical-ancilla kinds (3-5) ----------------------------------


def _encoder_steps(base: int, schedule: str, plus: bool) -> list[list]:
    """Step list of a block encoder acting on ids base+1 .. base+7."""
    from .code import ENCODER_PIVOTS, PARALLEL_CNOT_LAYERS, SEQUENTIAL_CNOTS

    steps: list[list] = [[prep_z(base + q) for q in range(1, N + 1)]]
    steps.append([h(base + p) for p in ENCODER_PIVOTS])
    if schedule == "sequential":
        steps.extend([[cnot(base + a, base + b)] for a, b in SEQUENTIAL_CNOTS])
    else:
        steps.extend(
            [[cnot(base + a, base + b) for a, b in layer] for layer in PARALLEL_CNOT_LAYERS]
        )
    if plus:
        steps.append([h(base + q) for q in range(1, N + 1)])
    return steps


def _merge_steps(a: list[list], b: list[list]) -> list[list]:
    out = []
    for i in range(max(len(a), len(b))):
        out.append((a[i] if i < len(a) else []) + (b[i] if i < len(b) else []))
    return out


V2_BASE = 28  # second verification block, used by kind 5 only


def build_plus_prep_gadget(schedule: str, verify_both: bool = False) -> Gadget:
    """Logical-plus block on A, verified against its data-damaging errors.

    During syndrome extraction the plus block is a CNOT *target* of the
    data, so its Z errors copy back onto the data while its X errors only
    flip the block's own Z readout (protected by the syndrome majority
    vote).  Phase verification therefore comes first: a fresh plus block
    couples into A (Z errors of A copy onto it) and is measured
    transversally in X; the ancilla is accepted iff all three H-parities
    of the flip word vanish.  ``verify_both`` adds the complementary
    bit-flip verification against a fresh zero block (kind 5).
    """
    encoders = [
        _encoder_steps(A_BASE, schedule, plus=True),
        _encoder_steps(V_BASE, schedule, plus=True),
    ]
    if verify_both:
        # The copy target is itself plus-encoded: single faults in a plus
        # encoder only yield Z patterns that are stabilizers or carry a
        # nonzero syndrome, so whatever it kicks back onto A is caught by
        # the phase verification (its Z readout parities stay
        # deterministic, any codeword has zero H-parities).
        encoders.append(_encoder_steps(V2_BASE, schedule, plus=True))
    steps = encoders[0]
    for enc in encoders[1:]:
        steps = _merge_steps(steps, enc)
    c = Circuit()
    for s in steps:
        c.add_step(s)
    checks = {f"vx{i}": ROW_MASKS[i] for i in range(3)}
    if verify_both:
        # Bit verification couples first: Z errors its zero block kicks
        # back onto A are still seen by the phase verification below.
        c.add_step([cnot(A_BASE + q, V2_BASE + q) for q in range(1, N + 1)])
        c.add_step([cnot(V_BASE + q, A_BASE + q) for q in range(1, N + 1)])
        c.add_step(
            [meas_x(V_BASE + q) for q in range(1, N + 1)]
            + [meas_z(V2_BASE + q) for q in range(1, N + 1)]
        )
        checks |= {f"vz{i}": ROW_MASKS[i] << N for i in range(3)}
    else:
        c.add_step([cnot(V_BASE + q, A_BASE + q) for q in range(1, N + 1)])
        c.add_step([meas_x(V_BASE + q) for q in range(1, N + 1)])
    return Gadget(c, checks)


def build_zero_prep_gadget(schedule: str, verify_both: bool = False) -> Gadget:
    """Logical-zero block on A', verified against its data-damaging errors.

    The zero block is a CNOT *control* into the data, so its X errors copy
    onto the data while its Z errors only flip the block's own X readout.
    Bit verification: X errors of A' copy onto a fresh zero block measured
    transversally in Z.  ``verify_both`` adds the complementary phase
    verification against a fresh plus block (kind 5).
    """
    encoders = [
        _encoder_steps(AP_BASE, schedule, plus=False),
        _encoder_steps(V_BASE, schedule, plus=False),
    ]
    if verify_both:
        # The phase-verification control is itself zero-encoded: single
        # faults in a zero encoder only yield X patterns that are
        # stabilizers or carry a nonzero syndrome, so whatever it kicks
        # forward onto A' is caught by the bit verification (its X readout
        # parities stay deterministic).
        encoders.append(_encoder_steps(V2_BASE, schedule, plus=False))
    steps = encoders[0]
    for enc in encoders[1:]:
        steps = _merge_steps(steps, enc)
    c = Circuit()
    for s in steps:
        c.add_step(s)
    checks = {f"vz{i}": ROW_MASKS[i] for i in range(3)}
    if verify_both:
        # Phase verification couples first: X errors its plus block kicks
        # back onto A' are still seen by the bit verification below.
        c.add_step([cnot(V2_BASE + q, AP_BASE + q) for q in range(1, N + 1)])
        c.add_step([cnot(AP_BASE + q, V_BASE + q) for q in range(1, N + 1)])
        c.add_step(
            [meas_z(V_BASE + q) for q in range(1, N + 1)]
            + [meas_x(V2_BASE + q) for q in range(1, N + 1)]
        )
        checks |= {f"vx{i}": ROW_MASKS[i] << N for i in range(3)}
    else:
        c.add_step([cnot(AP_BASE + q, V_BASE + q) for q in range(1, N + 1)])
        c.add_step([meas_z(V_BASE + q) for q in range(1, N + 1)])
    return Gadget(c, checks)


def build_steane_online_gadget(sector: str) -> Gadget:
    """Transversal coupling and readout of one logical ancilla block.

    One gadget per sector so the second block is delivered just in time
    instead of idling through the first block's coupling and readout.
    """
    data = list(range(1, N + 1))
    c = Circuit()
    if sector == "z":
        c = Circuit(live_at_start=data + [A_BASE + q for q in data])
        c.add_step([cnot(q, A_BASE + q) for q in data])
        c.add_step([meas_z(A_BASE + q) for q in data])
        checks = {f"s_z{i}": ROW_MASKS[i] for i in range(3)}
    else:
        c = Circuit(live_at_start=data + [AP_BASE + q for q in data])
        c.add_step([cnot(AP_BASE + q, q) for q in data])
        c.add_step([meas_x(AP_BASE + q) for q in data])
        checks = {f"s_x{i}": ROW_MASKS[i] for i in range(3)}
    return Gadget(c, checks)


# -- extraction ----------------------------------------------------------


def _assemble_syndrome(bits: dict[str, int]) -> Syndrome:
    s_z = s_x = 0
    for i in range(3):
        s_z |= bits.get(f"s_z{i}", 0) << i
        s_x |= bits.get(f"s_x{i}", 0) << i
    return Syndrome(s_z, s_x)


class Extractor:
    """Compiled gadget pipeline for one ancilla kind.

    An extraction is a sequence of stages.  Each stage optionally prepares
    (and verifies, with retries) an offline ancilla, then runs one online
    gadget that couples it to the data and measures it.  Ancillas are
    delivered to the data just in time, stage by stage; a stage's carry
    mask keeps any ancilla qubits that stay live into the next stage
    (pipelined readout) in the inter-stage frame.
    """

    def __init__(self, kind: AncillaKind):
        self.kind = kind
        self.stages: list[
            tuple[tuple[Gadget, CompiledGadget] | None, Gadget, CompiledGadget, int]
        ] = []

        def add_stage(
            prep: Gadget | None, online: Gadget, carry: int = DATA_MASK
        ) -> None:
            compiled_prep = None if prep is None else (prep, CompiledGadget(prep))
            self.stages.append((compiled_prep, online, CompiledGadget(online), carry))

        if kind is AncillaKind.SIMPLE:
            add_stage(None, build_simple_gadget())
        elif kind is AncillaKind.SHOR:
            prev = None
            for gen in range(6):
                cats, _v = shor_cat_ids(gen)
                carry = DATA_MASK | sum(1 << (q - 1) for q in cats)
                add_stage(
                    build_shor_prep_gadget(gen),
                    build_shor_online_gadget(gen, prev),
                    carry,
                )
                prev = gen
            add_stage(None, build_shor_online_gadget(None, prev))
        else:
            schedule = "sequential" if kind is AncillaKind.STEANE else "parallel"
            both = kind is AncillaKind.STEANE_PAR_V
            add_stage(
                build_plus_prep_gadget(schedule, verify_both=both),
                build_steane_online_gadget("z"),
            )
            add_stage(
                build_zero_prep_gadget(schedule, verify_both=both),
                build_steane_online_gadget("x"),
            )

    def _prep_frame(
        self,
        prep: tuple[Gadget, CompiledGadget],
        model: ErrorModel,
        rs: RandomSource,
        policy: VerificationPolicy,
    ) -> tuple[int, int]:
        """Sample one accepted ancilla preparation (offline retries)."""
        gadget, compiled = prep
        if not gadget.checks:
            x, z, _ = compiled.sample(model, rs)
            return x, z
        for attempt in range(policy.max_attempts):
            x, z, flips = compiled.sample(model, rs)
            if all(gadget.parity(n, flips) == 0 for n in gadget.checks):
                break
        else:
            if policy.on_exhaust == "abort":
                raise TrialAborted(
                    f"{self.kind.name} verification failed "
                    f"{policy.max_attempts} times"
                )
        return x, z

    def extract(
        self,
        fx: int,
        fz: int,
        model: ErrorModel,
        rs: RandomSource,
        policy: VerificationPolicy = DEFAULT_POLICY,
    ) -> tuple[Syndrome, int, int]:
        """One noisy syndrome extraction; returns (syndrome, new data frame)."""
        bits: dict[str, int] = {}
        for prep, online_gadget, online, carry in self.stages:
            ax = az = 0
            if prep is not None:
                ax, az = self._prep_frame(prep, model, rs, policy)
            x, z, flips = online.sample(model, rs, in_x=fx | ax, in_z=fz | az)
            fx, fz = x & carry, z & carry
            for name in online_gadget.checks:
                bits[name] = online_gadget.parity(name, flips)
        return _assemble_syndrome(bits), fx & DATA_MASK, fz & DATA_MASK

    # Slow reference path through the step-by-step simulator; used by the
    # test suite to cross-validate the compiled path.
    def extract_direct(
        self,
        fx: int,
        fz: int,
        model: ErrorModel,
        rng,
        policy: VerificationPolicy = DEFAULT_POLICY,
    ) -> tuple[Syndrome, int, int]:
        bits: dict[str, int] = {}
        for prep, online_gadget, _, carry in self.stages:
            ax = az = 0
            if prep is not None:
                gadget, _c = prep
                if not gadget.checks:
                    frame, _b = run_circuit(gadget.circuit, rng, model)
                else:
                    for attempt in range(policy.max_attempts):
                        frame, mbits = run_circuit(gadget.circuit, rng, model)
                        flips = _bits_to_int(mbits)
                        if all(gadget.parity(n, flips) == 0 for n in gadget.checks):
                            break
                    else:
                        if policy.on_exhaust == "abort":
                            raise TrialAborted("verification retries exhausted")
                ax, az = frame.x, frame.z
            frame, mbits = run_circuit(
                online_gadget.circuit, rng, model, Frame(fx | ax, fz | az)
            )
            flips = _bits_to_int(mbits)
            fx, fz = frame.x & carry, frame.z & carry
            for name in online_gadget.checks:
                bits[name] = online_gadget.parity(name, flips)
        return _assemble_syndrome(bits), fx & DATA_MASK, fz & DATA_MASK


def _bits_to_int(bits: list[int]) -> int:
    out = 0
    for i, b in enumerate(bits):
        out |= b << i
    return out


_EXTRACTORS: dict[AncillaKind, Extractor] = {}


def get_extractor(kind: AncillaKind) -> Extractor:
    ext = _EXTRACTORS.get(kind)
    if ext is None:
        ext = Extractor(kind)
        _EXTRACTORS[kind] = ext
    return ext
