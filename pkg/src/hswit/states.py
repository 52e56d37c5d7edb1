"""Reference states, their operators, and state-manipulation helpers.

The catalog pairs each reference state with its Bell operator (when one
is known), its witness operator kernel G, and the expected benchmark
numbers those operators must reproduce.  Operator tables are transcribed
constants: the W(4) operator carries a Z^4 coefficient three times the
state's, so deriving the tables from state coefficients is wrong in
general.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .hs import HSOperator, hs_decompose, hs_reconstruct
from .pauli_core import Array, DensityMatrix, InvalidStateError, check_qubit_count

MDS_R_LIMIT = 1.0 / np.sqrt(3.0)


def ghz(n: int) -> DensityMatrix:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    check_qubit_count(n)
    if n < 2:
        raise ValueError("a GHZ state needs at least 2 qubits")
    vec = np.zeros(2**n, dtype=complex)
    vec[0] = vec[-1] = 1.0 / np.sqrt(2.0)
    return DensityMatrix.from_statevector(vec)


def w_state(n: int) -> DensityMatrix:
    """Equal superposition of the n single-excitation basis states."""
    check_qubit_count(n)
    if n < 3:
        raise ValueError("a W state needs at least 3 qubits")
    vec = np.zeros(2**n, dtype=complex)
    for k in range(n):
        vec[1 << (n - 1 - k)] = 1.0 / np.sqrt(n)
    return DensityMatrix.from_statevector(vec)


def cluster4() -> DensityMatrix:
    """(|0000> + |0011> + |1100> - |1111>)/2, the four-qubit linear cluster."""
    vec = np.zeros(16, dtype=complex)
    vec[0b0000] = vec[0b0011] = vec[0b1100] = 0.5
    vec[0b1111] = -0.5
    return DensityMatrix.from_statevector(vec)


def mds_g_operator(r: float) -> HSOperator:
    """r * (XXX + YYY + ZZZ), the witness kernel for the mds family."""
    return HSOperator(3, {"XXX": r, "YYY": r, "ZZZ": r})


def mds(r: float) -> DensityMatrix:
    """Three-qubit mixed state 8 rho = III + r (XXX + YYY + ZZZ).

    Its eigenvalues are (1 +/- r sqrt(3))/8, four of each, so the matrix
    is a state exactly when |r| <= 1/sqrt(3).
    """
    if abs(r) > MDS_R_LIMIT + 1e-12:
        raise InvalidStateError(f"mds requires |r| <= 1/sqrt(3) ~ {MDS_R_LIMIT:.6f}, got {r}")
    eye = np.eye(8, dtype=complex)
    mat = (eye + hs_reconstruct(mds_g_operator(r))) / 8.0
    return DensityMatrix(mat, 3)


@dataclass(frozen=True)
class ProductState:
    """A pure product state, one (theta, phi) Bloch pair per qubit.

    theta in [0, pi] is the polar angle from +z, phi in [0, 2 pi) the
    azimuth; the qubit vector is cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
    """

    angles: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.angles) == 0:
            raise ValueError("a product state needs at least 1 qubit")
        check_qubit_count(len(self.angles))
        for theta, phi in self.angles:
            if not 0.0 <= theta <= np.pi:
                raise ValueError(f"theta must lie in [0, pi], got {theta}")
            if not 0.0 <= phi < 2.0 * np.pi:
                raise ValueError(f"phi must lie in [0, 2 pi), got {phi}")

    @classmethod
    def from_bloch_vectors(cls, vectors: Array) -> ProductState:
        """Build from an (n, 3) array of unit Bloch vectors."""
        vecs = np.asarray(vectors, dtype=float)
        if vecs.ndim != 2 or vecs.shape[1] != 3:
            raise ValueError(f"expected an (n, 3) array, got shape {vecs.shape}")
        norms = np.linalg.norm(vecs, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-9:
            raise ValueError("Bloch vectors must have unit norm")
        angles = []
        for x, y, z in vecs:
            theta = float(np.arccos(np.clip(z, -1.0, 1.0)))
            phi = float(np.arctan2(y, x)) % (2.0 * np.pi)
            if phi >= 2.0 * np.pi:  # a tiny negative atan2 can wrap to exactly 2*pi
                phi = 0.0
            angles.append((theta, phi))
        return cls(tuple(angles))

    @property
    def n(self) -> int:
        return len(self.angles)

    def bloch_vectors(self) -> Array:
        """(n, 3) array of per-qubit Bloch vectors."""
        out = np.empty((self.n, 3), dtype=float)
        for k, (theta, phi) in enumerate(self.angles):
            sin_t = np.sin(theta)
            out[k] = (sin_t * np.cos(phi), sin_t * np.sin(phi), np.cos(theta))
        return out

    def statevector(self) -> Array:
        vec = np.ones(1, dtype=complex)
        for theta, phi in self.angles:
            qubit = np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])
            vec = np.kron(vec, qubit)
        return vec


def product_state(ps: ProductState) -> DensityMatrix:
    return DensityMatrix.from_statevector(ps.statevector())


def product_state_coeffs(ps: ProductState) -> HSOperator:
    """Hilbert-Schmidt coefficients of a product state without any trace.

    For product states R_s factors into per-qubit Bloch components,
    R_s = prod_k v_k[s_k] with v_k[0] = 1, so the full table follows from
    an outer product over qubits.
    """
    blochs = ps.bloch_vectors()
    table = np.ones(1, dtype=float)
    for k in range(ps.n):
        table = np.outer(table, np.concatenate(([1.0], blochs[k]))).reshape(-1)
    coeffs = table.reshape((4,) * ps.n)
    terms = {}
    for axes in np.ndindex(*coeffs.shape):
        c = float(coeffs[axes])
        if abs(c) >= 1e-12:
            terms[tuple(int(a) for a in axes)] = c
    return HSOperator(ps.n, terms)


def mix_white_noise(rho: DensityMatrix, p: float) -> DensityMatrix:
    """(1 - p)/2^n * identity + p * rho.

    p = 1 returns the state itself, p = 0 the maximally mixed state.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    eye = np.eye(rho.dim, dtype=complex)
    return DensityMatrix((1.0 - p) / rho.dim * eye + p * rho.matrix, rho.n)


def partial_transpose(rho: DensityMatrix, qubit: int) -> Array:
    """Transpose within qubit ``qubit``'s 2x2 blocks; output may not be psd."""
    n = rho.n
    if not 0 <= qubit < n:
        raise ValueError(f"qubit index must lie in [0, {n}), got {qubit}")
    tensor = rho.matrix.reshape((2,) * (2 * n))
    tensor = np.swapaxes(tensor, qubit, n + qubit)
    return tensor.reshape(rho.dim, rho.dim).copy()


def partial_trace(rho: DensityMatrix, qubit: int) -> Array:
    """Trace out qubit ``qubit``, returning the (2^{n-1})-dim matrix."""
    n = rho.n
    if n < 2:
        raise ValueError("cannot trace out the only qubit")
    if not 0 <= qubit < n:
        raise ValueError(f"qubit index must lie in [0, {n}), got {qubit}")
    tensor = rho.matrix.reshape((2,) * (2 * n))
    reduced = np.trace(tensor, axis1=qubit, axis2=n + qubit)
    half = 2 ** (n - 1)
    return reduced.reshape(half, half).copy()


@dataclass(frozen=True)
class CatalogEntry:
    """One reference state with its operators and expected benchmarks.

    ``state_coeffs`` is the state's decomposition, computed once at
    construction.  ``bell`` is None when no Bell operator is part of the
    benchmark (the mds family is treated through its witness only).
    ``expected`` maps report fields to exact values (Fraction where
    rational); a missing key means the benchmark does not pin that
    quantity for this entry.
    """

    name: str
    description: str
    state: DensityMatrix
    state_coeffs: HSOperator
    bell: HSOperator | None
    g_witness: HSOperator
    expected: Mapping[str, Fraction | float] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.state.n


def _entry(
    name: str,
    description: str,
    state: DensityMatrix,
    bell: HSOperator | None,
    g_witness: HSOperator,
    expected: Mapping[str, Fraction | float],
) -> CatalogEntry:
    return CatalogEntry(name, description, state, hs_decompose(state), bell, g_witness, expected)


def _ghz3_entry() -> CatalogEntry:
    bell = HSOperator(3, {"XXX": 1, "XYY": -1, "YXY": -1, "YYX": -1})
    g = bell + HSOperator(3, {"ZZI": 1})
    return _entry(
        "ghz3",
        "three-qubit GHZ state",
        ghz(3),
        bell,
        g,
        {
            "beta_cl": Fraction(2),
            "beta_qu": Fraction(4),
            "pcrit_bell": Fraction(1, 2),
            "alpha": Fraction(1),
            "trace_g_rho": Fraction(5),
            "witness_value": Fraction(-4),
            "pcrit_witness": Fraction(1, 5),
        },
    )


def _w3_entry() -> CatalogEntry:
    bell = HSOperator(3, {"ZXX": 1, "XZX": 1, "XXZ": 1, "ZZZ": -1})
    g = bell + HSOperator(3, {"YYI": 1})
    return _entry(
        "w3",
        "three-qubit W state",
        w_state(3),
        bell,
        g,
        {
            "beta_cl": Fraction(2),
            "beta_qu": Fraction(3),
            "pcrit_bell": Fraction(2, 3),
            "alpha": Fraction(1),
            "trace_g_rho": Fraction(11, 3),
            "witness_value": Fraction(-8, 3),
            "pcrit_witness": Fraction(3, 11),
        },
    )


def _ghz4_entry() -> CatalogEntry:
    bell = HSOperator(
        4,
        {
            "XXXX": 1,
            "YYYY": 1,
            "XXYY": -1,
            "XYXY": -1,
            "XYYX": -1,
            "YXXY": -1,
            "YXYX": -1,
            "YYXX": -1,
        },
    )
    g = bell + HSOperator(4, {"ZZZZ": 1})
    return _entry(
        "ghz4",
        "four-qubit GHZ state",
        ghz(4),
        bell,
        g,
        {
            "beta_cl": Fraction(4),
            "beta_qu": Fraction(8),
            "pcrit_bell": Fraction(1, 2),
            "alpha": Fraction(1),
            "trace_g_rho": Fraction(9),
            "witness_value": Fraction(-8),
            "pcrit_witness": Fraction(1, 9),
        },
    )


def _w4_entry() -> CatalogEntry:
    half = Fraction(1, 2)
    bell = HSOperator(
        4,
        {
            "ZZZZ": -3,
            "ZZXX": half,
            "ZXZX": half,
            "ZXXZ": half,
            "XZXZ": half,
            "XZZX": half,
            "XXZZ": half,
            "ZZYY": half,
            "ZYZY": half,
            "ZYYZ": half,
            "YZYZ": half,
            "YZZY": half,
            "YYZZ": half,
        },
    )
    return _entry(
        "w4",
        "four-qubit W state",
        w_state(4),
        bell,
        bell,
        {
            "beta_cl": Fraction(5),
            "beta_qu": Fraction(6),
            "pcrit_bell": Fraction(5, 6),
            "alpha": Fraction(3),
            "trace_g_rho": Fraction(6),
            "witness_value": Fraction(-3),
            "pcrit_witness": Fraction(1, 2),
        },
    )


def _cl4_entry() -> CatalogEntry:
    bell = HSOperator(
        4,
        {
            "XYXY": 1,
            "XYYX": 1,
            "YXXY": 1,
            "YXYX": 1,
            "XXZI": 1,
            "XXIZ": 1,
            "YYZI": -1,
            "YYIZ": -1,
        },
    )
    return _entry(
        "cl4",
        "four-qubit linear cluster state",
        cluster4(),
        bell,
        bell,
        {
            "beta_cl": Fraction(4),
            "beta_qu": Fraction(8),
            "pcrit_bell": Fraction(1, 2),
            "alpha": Fraction(2),
            "trace_g_rho": Fraction(8),
            "witness_value": Fraction(-6),
            "pcrit_witness": Fraction(1, 4),
        },
    )


def _mds_entry(r: float) -> CatalogEntry:
    return _entry(
        "mds",
        f"three-qubit maximally disordered subsystems state, r = {r:g}",
        mds(r),
        None,
        mds_g_operator(r),
        {
            "alpha": r,
            "trace_g_rho": 3.0 * r * r,
            "witness_value": r - 3.0 * r * r,
            "pcrit_witness": 1.0 / (3.0 * r),
            "threshold_r": Fraction(1, 3),
        },
    )


def catalog(mds_r: float = 0.5) -> dict[str, CatalogEntry]:
    """All reference entries keyed by name.

    ``mds_r`` sets the mixing coefficient of the mds entry; it must be
    positive so the witness-side numbers are defined.
    """
    if not 0.0 < mds_r <= MDS_R_LIMIT + 1e-12:
        raise ValueError(f"mds_r must lie in (0, 1/sqrt(3)], got {mds_r}")
    entries = [
        _ghz3_entry(),
        _w3_entry(),
        _ghz4_entry(),
        _w4_entry(),
        _cl4_entry(),
        _mds_entry(mds_r),
    ]
    return {e.name: e for e in entries}
