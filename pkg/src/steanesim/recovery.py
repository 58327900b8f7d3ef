"""One full recovery: repeated extraction, majority vote, frame correction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ancilla import (
    DEFAULT_POLICY,
    AncillaKind,
    Extractor,
    VerificationPolicy,
)
from .circuit import ErrorModel
from .code import Syndrome
from .compiled import RandomSource

__all__ = ["RecoveryConfig", "majority", "recover"]


@dataclass(frozen=True)
class RecoveryConfig:
    ancilla: AncillaKind
    policy: VerificationPolicy = DEFAULT_POLICY

    @property
    def repeats(self) -> int:
        return self.ancilla.repeats


def majority(syndromes: Sequence[Syndrome]) -> Optional[Syndrome]:
    """Most repeated of three full 6-bit syndromes; None if all distinct."""
    if len(syndromes) != 3:
        raise ValueError("majority expects exactly 3 syndromes")
    a, b, c = syndromes
    if a == b or a == c:
        return a
    if b == c:
        return b
    return None


def recover(
    fx: int,
    fz: int,
    extractor: Extractor,
    model: ErrorModel,
    rs: RandomSource,
    policy: VerificationPolicy = DEFAULT_POLICY,
) -> tuple[int, int]:
    """Extract (once or thrice), vote, and apply the decoded correction.

    The correction is a noiseless frame update: Pauli-frame corrections are
    classical bookkeeping and carry no gate-error charge.
    """
    repeats = extractor.kind.repeats
    if repeats == 1:
        s, fx, fz = extractor.extract(fx, fz, model, rs, policy)
    else:
        syndromes = []
        for _ in range(repeats):
            s_i, fx, fz = extractor.extract(fx, fz, model, rs, policy)
            syndromes.append(s_i)
        s = majority(syndromes)
    if s is not None and not s.is_zero:
        if s.s_z:
            fx ^= 1 << (s.s_z - 1)
        if s.s_x:
            fz ^= 1 << (s.s_x - 1)
    return fx, fz
