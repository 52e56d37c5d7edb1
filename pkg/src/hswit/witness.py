"""Entanglement witnesses built from product-state maxima.

For an operator G with no all-identity component, alpha = max over pure
product states of Tr(G rho_prod) gives the witness E_W = alpha I - G:
every fully separable state has Tr(E_W rho) >= 0 by convexity, so a
negative expectation certifies entanglement.  Mixing a state with white
noise, rho_p = (1 - p)/2^n I + p rho, scales every non-identity
coefficient by p, which yields the critical noise weights

    p_crit(witness) = alpha / Tr(G rho),
    p_crit(Bell)    = beta_cl / beta_qu.

A witness threshold is not in general tight against separability; for
the three-qubit GHZ family it happens to be (the noisy state admits an
explicit separable decomposition below it), which is why its witness
number doubles as the entanglement border there.  This module records
that as a domain fact and does not decide separability itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .hs import HSOperator, hs_decompose, overlap
from .lhv_bound import BoundResult, classical_bound
from .pauli_core import DensityMatrix, identity_string
from .product_max import AlphaResult, alpha_max
from .states import MDS_R_LIMIT, CatalogEntry, mds, mds_g_operator

MDS_THRESHOLD_R_LO = 1e-6
REPORT_ATOL = 1e-9


class WitnessIneffectiveError(Exception):
    """Raised when a witness cannot detect the state it was asked about."""


@dataclass(frozen=True)
class Witness:
    """E_W = alpha I - G, with the optimization record that produced alpha."""

    alpha: float
    g: HSOperator
    alpha_result: AlphaResult

    def __post_init__(self) -> None:
        if abs(self.g.identity_coefficient) != 0.0:
            raise ValueError("witness kernel must have no all-identity component")
        if self.alpha_result.argmax.n != self.g.n:
            raise ValueError(
                f"optimization ran on {self.alpha_result.argmax.n} qubits, kernel has {self.g.n}"
            )

    @property
    def n(self) -> int:
        return self.g.n

    def operator(self) -> HSOperator:
        """The witness as a Pauli-basis operator, identity term included."""
        return HSOperator(self.n, {identity_string(self.n): self.alpha}) - self.g


def build_witness(
    g: HSOperator,
    alpha_result: AlphaResult | None = None,
    starts: int = 64,
    seed: int = 0,
    tol: float = 1e-10,
    max_iters: int = 500,
) -> Witness:
    """Witness for an identity-free operator G via the product-state maximum.

    Pass a precomputed ``alpha_result`` (it must come from the same G) to
    skip the optimization; otherwise one is run with the given settings.
    """
    if alpha_result is None:
        alpha_result = alpha_max(g, starts=starts, seed=seed, tol=tol, max_iters=max_iters)
    return Witness(alpha_result.alpha, g, alpha_result)


def eval_witness(witness: Witness, rho: DensityMatrix) -> float:
    """Tr(E_W rho); negative values certify entanglement."""
    if rho.n != witness.n:
        raise ValueError(f"state has {rho.n} qubits, witness expects {witness.n}")
    return witness.alpha - overlap(witness.g, hs_decompose(rho))


def pcrit_bell(beta_cl: float, beta_qu: float) -> float:
    """White-noise weight above which the Bell inequality is violated.

    Values >= 1 mean the inequality is never violated at any noise level.
    """
    if beta_qu <= 0:
        raise ValueError(f"beta_qu must be positive, got {beta_qu}")
    return beta_cl / beta_qu


def pcrit_witness(alpha: float, trace_g_rho: float) -> float:
    """White-noise weight above which the witness detects the state."""
    if trace_g_rho <= alpha:
        raise WitnessIneffectiveError(
            f"Tr(G rho) = {trace_g_rho} does not exceed alpha = {alpha}; "
            "the witness never detects this state"
        )
    return alpha / trace_g_rho


def mds_entanglement_threshold(
    r_lo: float = MDS_THRESHOLD_R_LO,
    r_hi: float = MDS_R_LIMIT,
    tol: float = 1e-9,
    starts: int = 16,
    seed: int = 0,
) -> float:
    """Mixing coefficient where the mds witness starts detecting the family.

    Runs the full pipeline at every probe: build the state, decompose it,
    rebuild the witness for that r, and bisect on the sign of the witness
    expectation.  No closed form of the crossing is assumed.
    """
    if not 0.0 < r_lo < r_hi:
        raise ValueError(f"need 0 < r_lo < r_hi, got {r_lo}, {r_hi}")

    def witness_value(r: float) -> float:
        w = build_witness(mds_g_operator(r), starts=starts, seed=seed)
        return eval_witness(w, mds(r))

    lo_val = witness_value(r_lo)
    hi_val = witness_value(r_hi)
    if lo_val <= 0 or hi_val >= 0:
        raise ValueError(
            f"witness values do not bracket a crossing: f({r_lo}) = {lo_val}, f({r_hi}) = {hi_val}"
        )
    lo, hi = r_lo, r_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if witness_value(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class WitnessReport:
    """All benchmark numbers for one catalog entry.

    Bell-side fields are None when the entry carries no Bell operator.
    ``expected`` echoes the entry's reference values so the report can
    grade itself; values may be exact rationals.
    """

    name: str
    n: int
    alpha: float
    trace_g_rho: float
    witness_value: float
    pcrit_witness: float
    beta_cl: float | None
    beta_qu: float | None
    pcrit_bell: float | None
    expected: Mapping[str, object]
    alpha_result: AlphaResult
    bound_result: BoundResult | None

    def computed(self) -> dict[str, float]:
        """Field name -> value for every quantity this report holds."""
        out = {
            "alpha": self.alpha,
            "trace_g_rho": self.trace_g_rho,
            "witness_value": self.witness_value,
            "pcrit_witness": self.pcrit_witness,
        }
        if self.beta_cl is not None:
            out["beta_cl"] = self.beta_cl
        if self.beta_qu is not None:
            out["beta_qu"] = self.beta_qu
        if self.pcrit_bell is not None:
            out["pcrit_bell"] = self.pcrit_bell
        return out

    def checks(self, atol: float = REPORT_ATOL) -> dict[str, bool]:
        """Per-field comparison against the expected values, where both exist."""
        computed = self.computed()
        out = {}
        for key, exp in self.expected.items():
            if key in computed:
                out[key] = abs(computed[key] - float(exp)) <= atol
        return out

    def all_ok(self, atol: float = REPORT_ATOL) -> bool:
        checks = self.checks(atol)
        return bool(checks) and all(checks.values())


def analyze(entry: CatalogEntry, starts: int = 64, seed: int = 0) -> WitnessReport:
    """Compute every benchmark quantity one catalog entry supports."""
    witness = build_witness(entry.g_witness, starts=starts, seed=seed)
    trace_g_rho = overlap(entry.g_witness, entry.state_coeffs)
    witness_value = witness.alpha - trace_g_rho
    pc_w = pcrit_witness(witness.alpha, trace_g_rho)

    beta_cl = beta_qu = pc_b = None
    bound = None
    if entry.bell is not None:
        bound = classical_bound(entry.bell)
        beta_cl = bound.beta_cl
        beta_qu = overlap(entry.bell, entry.state_coeffs)
        pc_b = pcrit_bell(beta_cl, beta_qu)

    return WitnessReport(
        name=entry.name,
        n=entry.n,
        alpha=witness.alpha,
        trace_g_rho=trace_g_rho,
        witness_value=witness_value,
        pcrit_witness=pc_w,
        beta_cl=beta_cl,
        beta_qu=beta_qu,
        pcrit_bell=pc_b,
        expected=dict(entry.expected),
        alpha_result=witness.alpha_result,
        bound_result=bound,
    )
