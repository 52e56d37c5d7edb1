"""Hilbert-Schmidt decompositions over the n-qubit Pauli basis.

A state rho with coefficients R_s satisfies 2^n rho = sum_s R_s sigma_s
with R_s = Tr(rho sigma_s).  Operators such as Bell operators are stored
directly as sum_s O_s sigma_s.  With those conventions the expectation
value of an operator in a state is the plain coefficient dot product:
Tr(O rho) = sum_s O_s R_s, with no dimension factor.
"""

from __future__ import annotations

from numbers import Real
from typing import Iterable, Mapping

import numpy as np

from .pauli_core import (
    SIGMA,
    Array,
    DensityMatrix,
    PauliString,
    check_qubit_count,
    identity_string,
    string_matrix,
)

PRUNE_TOL = 1e-12


def _as_string(key: PauliString | str | tuple[int, ...], n: int) -> PauliString:
    if isinstance(key, PauliString):
        s = key
    elif isinstance(key, str):
        s = PauliString.from_label(key)
    else:
        s = PauliString(tuple(key))
    if s.n != n:
        raise ValueError(f"term {s} has {s.n} qubits, expected {n}")
    return s


class HSOperator:
    """Real linear combination of Pauli strings on a fixed qubit count.

    Terms with |coefficient| < PRUNE_TOL are dropped at construction, and
    the remaining terms are kept sorted by label so iteration order is
    deterministic.
    """

    __slots__ = ("n", "terms")

    def __init__(
        self,
        n: int,
        terms: Mapping[PauliString | str | tuple[int, ...], float] | None = None,
    ) -> None:
        check_qubit_count(n)
        cleaned: dict[PauliString, float] = {}
        for key, value in (terms or {}).items():
            s = _as_string(key, n)
            if not isinstance(value, Real):
                raise ValueError(f"coefficient for {s} must be real, got {value!r}")
            c = float(value)
            if s in cleaned:
                raise ValueError(f"duplicate term {s}")
            if abs(c) >= PRUNE_TOL:
                cleaned[s] = c
        self.n = n
        self.terms = dict(sorted(cleaned.items(), key=lambda kv: kv[0].axes))

    def coefficient(self, key: PauliString | str | tuple[int, ...]) -> float:
        """Coefficient of one Pauli string, 0.0 when absent."""
        return self.terms.get(_as_string(key, self.n), 0.0)

    @property
    def identity_coefficient(self) -> float:
        return self.terms.get(identity_string(self.n), 0.0)

    @property
    def support(self) -> frozenset[PauliString]:
        return frozenset(self.terms)

    def labels(self) -> list[str]:
        return [s.label() for s in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterable[tuple[PauliString, float]]:
        return iter(self.terms.items())

    def __add__(self, other: HSOperator) -> HSOperator:
        if not isinstance(other, HSOperator):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"cannot add operators on {self.n} and {other.n} qubits")
        merged = dict(self.terms)
        for s, c in other.terms.items():
            merged[s] = merged.get(s, 0.0) + c
        return HSOperator(self.n, merged)

    def __sub__(self, other: HSOperator) -> HSOperator:
        return self + (-other)

    def __neg__(self) -> HSOperator:
        return HSOperator(self.n, {s: -c for s, c in self.terms.items()})

    def __rmul__(self, scale: float) -> HSOperator:
        if not isinstance(scale, Real):
            return NotImplemented
        return HSOperator(self.n, {s: float(scale) * c for s, c in self.terms.items()})

    def __mul__(self, scale: float) -> HSOperator:
        return self.__rmul__(scale)

    def relabel(self, mapping: Mapping[int, int]) -> HSOperator:
        """Apply one permutation of the axes {1: x, 2: y, 3: z} on every qubit.

        The identity axis 0 always maps to itself.  Relabeling is a local
        unitary on each qubit, so spectra and product-state maxima are
        unchanged.
        """
        perm = {0: 0, **{int(k): int(v) for k, v in mapping.items()}}
        if sorted(perm) != [0, 1, 2, 3] or sorted(perm.values()) != [0, 1, 2, 3]:
            raise ValueError(f"mapping must be a permutation of {{1, 2, 3}}, got {dict(mapping)}")
        return HSOperator(
            self.n,
            {PauliString(tuple(perm[a] for a in s.axes)): c for s, c in self.terms.items()},
        )

    def is_close(self, other: HSOperator, atol: float = 1e-9) -> bool:
        """True when both operators have the same coefficients within atol."""
        if self.n != other.n:
            return False
        for s in self.support | other.support:
            if abs(self.terms.get(s, 0.0) - other.terms.get(s, 0.0)) > atol:
                return False
        return True

    def __repr__(self) -> str:
        body = " + ".join(f"{c:g}*{s}" for s, c in self.terms.items()) or "0"
        return f"HSOperator({self.n}, {body})"


def hs_decompose(rho: DensityMatrix) -> HSOperator:
    """Coefficients R_s = Tr(rho sigma_s) for every Pauli string.

    All 4^n traces are evaluated in one tensor contraction over the
    per-qubit indices; terms below PRUNE_TOL are dropped.
    """
    n = rho.n
    tensor = rho.matrix.reshape((2,) * (2 * n))
    # index layout: rows r_k = k, columns c_k = n + k, axes a_k = 2n + k
    operands: list = [tensor, list(range(2 * n))]
    for k in range(n):
        operands.extend([SIGMA, [2 * n + k, n + k, k]])
    operands.append([2 * n + k for k in range(n)])
    coeffs = np.einsum(*operands, optimize=True)
    if np.max(np.abs(coeffs.imag)) > 1e-8:
        raise ValueError("decomposition produced complex coefficients; input is not Hermitian")
    flat = coeffs.real.reshape(-1)
    keep = np.nonzero(np.abs(flat) >= PRUNE_TOL)[0]
    terms: dict[PauliString, float] = {}
    for idx in keep:
        axes = tuple(int(a) for a in np.unravel_index(int(idx), (4,) * n))
        terms[PauliString(axes)] = float(flat[idx])
    return HSOperator(n, terms)


def hs_reconstruct(op: HSOperator) -> Array:
    """Dense matrix sum_s O_s sigma_s.

    For coefficients obtained from :func:`hs_decompose` this returns
    2^n rho, not rho; divide by 2^n to materialize the state.
    """
    dim = 2**op.n
    total = np.zeros((dim, dim), dtype=complex)
    for s, c in op.terms.items():
        total += c * string_matrix(s)
    return total


def overlap(op: HSOperator, state_coeffs: HSOperator) -> float:
    """Tr(O rho) = sum_s O_s R_s for an operator and a state decomposition."""
    if op.n != state_coeffs.n:
        raise ValueError(f"qubit counts differ: {op.n} vs {state_coeffs.n}")
    small, large = op.terms, state_coeffs.terms
    if len(large) < len(small):
        small, large = large, small
    return float(sum(c * large.get(s, 0.0) for s, c in small.items()))
