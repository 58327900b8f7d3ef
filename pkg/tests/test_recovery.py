"""Majority vote and full-recovery behaviour."""
import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from steanesim.ancilla import AncillaKind, get_extractor
from steanesim.circuit import ErrorModel
from steanesim.code import Syndrome, decode, syndrome_bits
from steanesim.compiled import RandomSource
from steanesim.recovery import RecoveryConfig, majority, recover

NOISELESS = ErrorModel(0.0, 0.0)


def test_majority_examples():
    a, b, c = Syndrome(1, 0), Syndrome(1, 0), Syndrome(2, 0)
    assert majority([a, b, c]) == a
    assert majority([c, a, b]) == a
    assert majority([a, c, c]) == c
    assert majority([a, a, a]) == a
    assert majority([Syndrome(1, 0), Syndrome(2, 0), Syndrome(3, 0)]) is None


def test_majority_requires_exactly_three():
    with pytest.raises(ValueError):
        majority([Syndrome(0, 0)])
    with pytest.raises(ValueError):
        majority([Syndrome(0, 0)] * 4)


syndromes = st.builds(Syndrome, st.integers(0, 7), st.integers(0, 7))


@given(st.permutations([0, 1, 2]), syndromes, syndromes, syndromes)
def test_majority_is_permutation_invariant(perm, a, b, c):
    trio = [a, b, c]
    assert majority(trio) == majority([trio[i] for i in perm])


@given(syndromes, syndromes)
def test_majority_pair_always_wins(a, b):
    assert majority([a, a, b]) == a
    assert majority([a, b, a]) == a
    assert majority([b, a, a]) == a


@pytest.mark.parametrize("kind", list(AncillaKind), ids=lambda k: k.cli_name)
def test_noiseless_recovery_corrects_every_decodable_error(kind):
    """For all 64 syndromes, the minimal-weight representative error is
    removed exactly by a noiseless recovery."""
    ex = get_extractor(kind)
    rs = RandomSource(np.random.default_rng(0))
    for s_z, s_x in itertools.product(range(8), repeat=2):
        rep = decode(Syndrome(s_z, s_x))
        fx, fz = recover(rep.x, rep.z, ex, NOISELESS, rs)
        assert (fx, fz) == (0, 0), (kind, s_z, s_x)


def test_noiseless_recovery_of_weight_two_leaves_logical_coset():
    """A weight-2 error is mis-decoded to the third support qubit; the
    result has zero syndrome (a logical operator), not identity."""
    ex = get_extractor(AncillaKind.STEANE_PAR)
    rs = RandomSource(np.random.default_rng(1))
    fx, fz = recover(0b011, 0, ex, NOISELESS, rs)  # X1 X2 -> correct qubit 3
    assert fx == 0b111 and fz == 0
    assert syndrome_bits(fx, fz) == (0, 0)


def test_recovery_config_repeats():
    assert RecoveryConfig(AncillaKind.SIMPLE).repeats == 1
    assert RecoveryConfig(AncillaKind.SHOR).repeats == 3


def test_noisy_recovery_single_syndrome_always_acts():
    """The simple ancilla applies whatever its one (noisy) syndrome says."""
    ex = get_extractor(AncillaKind.SIMPLE)
    rs = RandomSource(np.random.default_rng(2))
    fx, fz = recover(0b1, 0, ex, NOISELESS, rs)
    assert (fx, fz) == (0, 0)
