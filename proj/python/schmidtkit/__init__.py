"""Schmidt decompositions and homogeneous-form tests for finite-dimensional pure states."""

from ._core import (
    SchmidtkitError,
    PureState,
    SchmidtDecomposition,
    REPORT_SCHEMA_VERSION,
    __version__,
    apply_local_unitary,
    counting_check,
    entanglement_entropy,
    generalized_schmidt_test,
    ghz_state,
    make_correlated_state,
    matricize,
    nats_to_bits,
    normalize,
    parse_state_json,
    product_state,
    product_test,
    pure_vs_mixture_gap,
    random_state,
    reduced_density,
    schmidt_decompose,
    singlet_state,
    state_to_json,
    w_state,
)

__all__ = [
    "SchmidtkitError",
    "PureState",
    "SchmidtDecomposition",
    "REPORT_SCHEMA_VERSION",
    "apply_local_unitary",
    "counting_check",
    "entanglement_entropy",
    "generalized_schmidt_test",
    "ghz_state",
    "make_correlated_state",
    "matricize",
    "nats_to_bits",
    "normalize",
    "parse_state_json",
    "product_state",
    "product_test",
    "pure_vs_mixture_gap",
    "random_state",
    "reduced_density",
    "schmidt_decompose",
    "singlet_state",
    "state_to_json",
    "w_state",
]
