"""Exact computations with colored crossingless matchings, top projectors,
and the Hecke algebra of universal Coxeter groups."""

from .diagrams import (
    ColoredMatching,
    CrossinglessMatching,
    color_matching,
    enumerate_colored,
    enumerate_matchings,
)
from .hecke import kl_basis, mult_Hs, mult_kl_by_bs, reduce_word
from .jones_wenzl import (
    Decomposition,
    JWResult,
    decompose_identity,
    jw_descriptive,
    jw_recursive,
    maximal_alternating_runs,
    partial_trace_check,
    perp_space_oracle,
    right_coefficient_check,
    tail_length,
)
from .rings import (
    CartanMatrix,
    Integers,
    PrimeField,
    Rational,
    RationalFunctionDelta,
    RingElement,
    quantum_number,
    two_colored_binomial,
    two_colored_quantum,
)
from .soergel_gate import (
    RealizationSpec,
    Verdict,
    categorified_dyer_check,
    decompose_word,
    failing_primes,
    soergel_verdict,
)
from .tl_category import InvariantViolation, TLMorphism, compose, involution, juxtapose

__version__ = "0.1.0"

__all__ = [
    "CartanMatrix",
    "ColoredMatching",
    "CrossinglessMatching",
    "Decomposition",
    "Integers",
    "InvariantViolation",
    "JWResult",
    "PrimeField",
    "Rational",
    "RationalFunctionDelta",
    "RealizationSpec",
    "RingElement",
    "TLMorphism",
    "Verdict",
    "categorified_dyer_check",
    "color_matching",
    "compose",
    "decompose_identity",
    "decompose_word",
    "enumerate_colored",
    "enumerate_matchings",
    "failing_primes",
    "involution",
    "jw_descriptive",
    "jw_recursive",
    "juxtapose",
    "kl_basis",
    "maximal_alternating_runs",
    "mult_Hs",
    "mult_kl_by_bs",
    "partial_trace_check",
    "perp_space_oracle",
    "quantum_number",
    "reduce_word",
    "right_coefficient_check",
    "soergel_verdict",
    "tail_length",
    "two_colored_binomial",
    "two_colored_quantum",
]
