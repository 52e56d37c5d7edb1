"""Entanglement witnesses and Bell operators for n-qubit states.

Everything is built on the Hilbert-Schmidt decomposition over Pauli
strings: states become coefficient tables R_s = Tr(rho sigma_s),
operators stay coefficient tables, and expectation values reduce to
coefficient dot products.  On top of that the package provides exact
classical (local hidden variable) bounds, product-state maxima for
witness offsets, and white-noise robustness thresholds, with a catalog
of reference states whose benchmark numbers are pinned by tests.
"""

from .hs import HSOperator, hs_decompose, hs_reconstruct, overlap
from .lhv_bound import (
    BoundResult,
    LHVAssignment,
    classical_bound,
    evaluate_assignment,
    sampled_lower_bound,
)
from .pauli_core import (
    CapacityError,
    DensityMatrix,
    InvalidStateError,
    PauliString,
    hermitian_eigenvalues,
    identity_string,
    pauli_matrix,
    qubit_cap,
    string_matrix,
)
from .product_max import (
    AlphaResult,
    Ascent,
    alpha_grid_oracle,
    alpha_max,
    ascend,
    effective_field,
    objective,
)
from .states import (
    CatalogEntry,
    ProductState,
    catalog,
    cluster4,
    ghz,
    mds,
    mds_g_operator,
    mix_white_noise,
    partial_trace,
    partial_transpose,
    product_state,
    product_state_coeffs,
    w_state,
)
from .witness import (
    Witness,
    WitnessIneffectiveError,
    WitnessReport,
    analyze,
    build_witness,
    eval_witness,
    mds_entanglement_threshold,
    pcrit_bell,
    pcrit_witness,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaResult",
    "Ascent",
    "BoundResult",
    "CapacityError",
    "CatalogEntry",
    "DensityMatrix",
    "HSOperator",
    "InvalidStateError",
    "LHVAssignment",
    "PauliString",
    "ProductState",
    "Witness",
    "WitnessIneffectiveError",
    "WitnessReport",
    "alpha_grid_oracle",
    "alpha_max",
    "analyze",
    "ascend",
    "build_witness",
    "catalog",
    "classical_bound",
    "cluster4",
    "effective_field",
    "eval_witness",
    "evaluate_assignment",
    "ghz",
    "hermitian_eigenvalues",
    "hs_decompose",
    "hs_reconstruct",
    "identity_string",
    "mds",
    "mds_entanglement_threshold",
    "mds_g_operator",
    "mix_white_noise",
    "objective",
    "overlap",
    "partial_trace",
    "partial_transpose",
    "pauli_matrix",
    "pcrit_bell",
    "pcrit_witness",
    "product_state",
    "product_state_coeffs",
    "qubit_cap",
    "sampled_lower_bound",
    "string_matrix",
    "w_state",
]
