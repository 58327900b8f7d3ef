"""Monte Carlo simulation of fault-tolerant error correction for the
[[7,1,3]] code under an independent stochastic Pauli location-error model."""

__version__ = "0.1.0"

from .ancilla import AncillaKind, TrialAborted, VerificationPolicy, get_extractor
from .circuit import ErrorModel
from .code import ErrorClass, Syndrome, classify, decode, syndrome
from .engine import (
    ExperimentConfig,
    MetricsPoint,
    estimate,
    p_ne,
    run_trial,
)
from .pauli import PauliMask

__all__ = [
    "__version__",
    "AncillaKind",
    "TrialAborted",
    "VerificationPolicy",
    "get_extractor",
    "ErrorModel",
    "ErrorClass",
    "Syndrome",
    "classify",
    "decode",
    "syndrome",
    "ExperimentConfig",
    "MetricsPoint",
    "estimate",
    "p_ne",
    "run_trial",
    "PauliMask",
]
