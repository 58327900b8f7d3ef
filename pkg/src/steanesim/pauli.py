"""Bit-mask arithmetic for n-qubit Pauli operators, global phase ignored.

A Pauli operator is stored as a pair of integers (x, z) where bit q-1 of
``x`` is set iff qubit q carries an X component and bit q-1 of ``z`` is set
iff it carries a Z component.  A qubit carries Y exactly when both bits are
set.  Qubits are numbered 1..n, with qubit 1 leftmost in string renderings.

Global phase (+-1, +-i) is deliberately not tracked: every probability
computed downstream is phase-insensitive because all simulated states are
Pauli translates of a fixed stabilizer state.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "PauliMask",
    "compose",
    "weight",
    "anticommutes",
    "single",
    "from_string",
    "to_string",
]


@dataclass(frozen=True)
class PauliMask:
    """An n-qubit Pauli operator as paired X/Z bit vectors."""

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("PauliMask needs n >= 1")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full:
            raise ValueError("mask bits outside the n-qubit register")

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def __str__(self) -> str:
        return to_string(self)


def compose(a: PauliMask, b: PauliMask) -> PauliMask:
    """Product of two Paulis with the phase discarded (component-wise XOR)."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} != {b.n}")
    return PauliMask(a.n, a.x ^ b.x, a.z ^ b.z)


def weight(p: PauliMask) -> int:
    """Number of qubits on which the operator acts nontrivially."""
    return (p.x | p.z).bit_count()


def anticommutes(a: PauliMask, b: PauliMask) -> bool:
    """True iff a and b anticommute: parity of <a.x, b.z> + <a.z, b.x>."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} != {b.n}")
    return bool(((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) & 1)


def single(kind: str, qubit: int, n: int) -> PauliMask:
    """A weight-one Pauli of the given kind ('X', 'Y' or 'Z') on ``qubit``."""
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit {qubit} outside 1..{n}")
    bit = 1 << (qubit - 1)
    if kind == "X":
        return PauliMask(n, bit, 0)
    if kind == "Z":
        return PauliMask(n, 0, bit)
    if kind == "Y":
        return PauliMask(n, bit, bit)
    raise ValueError(f"unknown Pauli kind {kind!r}")


def from_string(s: str) -> PauliMask:
    """Parse a string over {I,X,Y,Z}; qubit 1 is the leftmost character."""
    x = z = 0
    for i, c in enumerate(s):
        bit = 1 << i
        if c == "X":
            x |= bit
        elif c == "Z":
            z |= bit
        elif c == "Y":
            x |= bit
            z |= bit
        elif c != "I":
            raise ValueError(f"bad Pauli character {c!r}")
    return PauliMask(len(s), x, z)


def to_string(p: PauliMask) -> str:
    chars = []
    for i in range(p.n):
        bit = 1 << i
        xs, zs = bool(p.x & bit), bool(p.z & bit)
        chars.append("Y" if xs and zs else "X" if xs else "Z" if zs else "I")
    return "".join(chars)
