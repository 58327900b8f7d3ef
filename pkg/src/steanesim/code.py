"""The [[7,1,3]] CSS code: checks, decoding and residual-error classification.

The parity-check matrix H has binary-counting columns: column j (j = 1..7)
is the binary representation of j with row 1 the least significant bit.
With this convention the syndrome of a single X error on qubit j, read as
an integer, is j itself, so table-free minimal-weight decoding is just
"flip the named qubit".  X and Z errors are corrected independently.

A residual Pauli on the data block falls into exactly one of three classes:

* CORRECT_IDENTITY  - the residual is a stabilizer element (counts toward
  the plain fidelity F0);
* CORRECT_WEIGHT_ONE - the residual is X_i Z_k with (i, k) != (0, 0) modulo
  the stabilizer group (counts toward F1);
* NON_CORRECTABLE   - everything else (weight-two and undetectable
  weight-three errors).

Classification is coset-based, so the choice of logical representatives
cannot affect it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .circuit import Circuit, cnot, h, prep_z
from .pauli import PauliMask, anticommutes

__all__ = [
    "N",
    "ROW_SUPPORTS",
    "ROW_MASKS",
    "X_GENERATORS",
    "Z_GENERATORS",
    "LOGICAL_X",
    "LOGICAL_Z",
    "Syndrome",
    "ErrorClass",
    "syndrome",
    "decode",
    "logical_class",
    "classify",
    "zero_logical_encoder",
    "plus_logical_encoder",
    "ENCODER_PIVOTS",
    "PARALLEL_CNOT_LAYERS",
]

N = 7
K = 1
D = 3
T = 1  # correction radius (d - 1) / 2

# Rows of H as qubit supports; row i collects the qubits whose label has
# bit i set (labels 1..7, bit 0 least significant).
ROW_SUPPORTS = (
    (1, 3, 5, 7),
    (2, 3, 6, 7),
    (4, 5, 6, 7),
)
ROW_MASKS = tuple(sum(1 << (q - 1) for q in supp) for supp in ROW_SUPPORTS)

X_GENERATORS = tuple(PauliMask(N, x=m, z=0) for m in ROW_MASKS)
Z_GENERATORS = tuple(PauliMask(N, x=0, z=m) for m in ROW_MASKS)

ALL_ONES = (1 << N) - 1
LOGICAL_X = PauliMask(N, x=ALL_ONES, z=0)
LOGICAL_Z = PauliMask(N, x=0, z=ALL_ONES)

# Encoder structure: Hadamard pivots are the binary-power labels; each
# pivot fans out to the remaining support of its H row.
ENCODER_PIVOTS = (1, 2, 4)
ENCODER_FANOUT = {1: (3, 5, 7), 2: (3, 6, 7), 4: (5, 6, 7)}

# Fixed conflict-free layering of the nine fan-out CNOTs (three layers;
# total parallel encoder depth 4 including the Hadamard layer).
PARALLEL_CNOT_LAYERS = (
    ((1, 7), (2, 3), (4, 5)),
    ((1, 5), (2, 7), (4, 6)),
    ((1, 3), (2, 6), (4, 7)),
)

SEQUENTIAL_CNOTS = tuple(
    (p, t) for p in ENCODER_PIVOTS for t in ENCODER_FANOUT[p]
)


@dataclass(frozen=True)
class Syndrome:
    """s_z: violated Z-generators (X-error syndrome); s_x: violated X-generators."""

    s_z: int
    s_x: int

    def __post_init__(self) -> None:
        if not (0 <= self.s_z <= 7 and 0 <= self.s_x <= 7):
            raise ValueError("syndrome components must lie in 0..7")

    @property
    def is_zero(self) -> bool:
        return self.s_z == 0 and self.s_x == 0


class ErrorClass(enum.Enum):
    CORRECT_IDENTITY = "correct_identity"
    CORRECT_WEIGHT_ONE = "correct_weight_one"
    NON_CORRECTABLE = "non_correctable"


def syndrome_bits(x_bits: int, z_bits: int) -> tuple[int, int]:
    """H . x and H . z over GF(2), packed as integers (mask-level fast path)."""
    s_z = s_x = 0
    for i, m in enumerate(ROW_MASKS):
        s_z |= ((x_bits & m).bit_count() & 1) << i
        s_x |= ((z_bits & m).bit_count() & 1) << i
    return s_z, s_x


def syndrome(e: PauliMask) -> Syndrome:
    """Syndrome of a data-block Pauli; a single X on qubit j gives s_z = j."""
    s_z, s_x = syndrome_bits(e.x, e.z)
    return Syndrome(s_z, s_x)


def decode(s: Syndrome) -> PauliMask:
    """The unique minimal-weight per-sector representative of a syndrome."""
    x = (1 << (s.s_z - 1)) if s.s_z else 0
    z = (1 << (s.s_x - 1)) if s.s_x else 0
    return PauliMask(N, x, z)


def logical_class(e: PauliMask) -> str:
    """Logical component ('I', 'X', 'Z' or 'Y') of a zero-syndrome Pauli."""
    if not syndrome(e).is_zero:
        raise ValueError("logical_class requires a zero-syndrome operator")
    has_x = anticommutes(e, LOGICAL_Z)
    has_z = anticommutes(e, LOGICAL_X)
    if has_x and has_z:
        return "Y"
    if has_x:
        return "X"
    if has_z:
        return "Z"
    return "I"


def classify(e: PauliMask) -> ErrorClass:
    """Bucket a residual data error into F0 / F1 / non-correctable."""
    cls = classify_bits(e.x, e.z)
    return cls


def classify_bits(x_bits: int, z_bits: int) -> ErrorClass:
    """Mask-level classify, avoiding PauliMask construction in hot loops."""
    s_z, s_x = syndrome_bits(x_bits, z_bits)
    rx = (1 << (s_z - 1)) if s_z else 0
    rz = (1 << (s_x - 1)) if s_x else 0
    ex, ez = x_bits ^ rx, z_bits ^ rz  # zero-syndrome coset representative
    # Logical components of the corrected residual.
    if ((ex & ALL_ONES).bit_count() & 1) or ((ez & ALL_ONES).bit_count() & 1):
        return ErrorClass.NON_CORRECTABLE
    if s_z or s_x:
        return ErrorClass.CORRECT_WEIGHT_ONE
    return ErrorClass.CORRECT_IDENTITY


def zero_logical_encoder(schedule: str = "parallel") -> Circuit:
    """Encoding circuit mapping |0>^7 to the logical zero codeword.

    schedule = "sequential": Hadamard layer then each CNOT in its own step
    (depth 10 after the noiseless preparation step).
    schedule = "parallel": Hadamard layer + 3 conflict-free CNOT layers
    (depth 4 after the preparation step).
    """
    c = Circuit()
    c.add_step([prep_z(q) for q in range(1, N + 1)])
    c.add_step([h(p) for p in ENCODER_PIVOTS])
    if schedule == "sequential":
        for ctrl, tgt in SEQUENTIAL_CNOTS:
            c.add_step([cnot(ctrl, tgt)])
    elif schedule == "parallel":
        for layer in PARALLEL_CNOT_LAYERS:
            c.add_step([cnot(ctrl, tgt) for ctrl, tgt in layer])
    else:
        raise ValueError(f"unknown schedule {schedule!r}")
    return c


def plus_logical_encoder(schedule: str = "parallel") -> Circuit:
    """Zero encoder followed by one step of transversal Hadamard.

    The code is self-dual, so transversal H maps the logical zero state to
    the logical plus state; in frame terms it swaps X and Z on every qubit.
    """
    c = zero_logical_encoder(schedule)
    c.add_step([h(q) for q in range(1, N + 1)])
    return c
