"""Classical (local hidden variable) bounds for Pauli-basis operators.

An LHV model assigns a definite +/-1 outcome to every (qubit, axis)
measurement; the classical bound is the maximum of the operator's value
over all such assignments.  Identity letters contribute a fixed factor
1, so operators with an all-identity component have no meaningful
classical bound and are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hs import HSOperator
from .pauli_core import AXIS_LABELS

DEFAULT_CHUNK = 1 << 20
DEFAULT_MAX_ASSIGNMENTS = 1 << 26


@dataclass(frozen=True)
class LHVAssignment:
    """One +/-1 outcome per qubit per axis (x, y, z).

    Axes the operator never measures carry the placeholder +1; only the
    measured ones affect any value computed from the assignment.
    """

    values: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("an assignment needs at least 1 qubit")
        for triple in self.values:
            if len(triple) != 3 or any(v not in (1, -1) for v in triple):
                raise ValueError(f"per-qubit values must be three of +1/-1, got {triple}")

    @property
    def n(self) -> int:
        return len(self.values)

    def value(self, qubit: int, axis: int) -> int:
        """Outcome for one qubit and one non-identity axis (1=x, 2=y, 3=z)."""
        if axis not in (1, 2, 3):
            raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
        return self.values[qubit][axis - 1]

    def lines(self, used: frozenset[tuple[int, int]] | None = None) -> list[str]:
        """One 'qubit k: X=+1 ...' line per qubit, restricted to used axes."""
        out = []
        for k, triple in enumerate(self.values):
            parts = [
                f"{AXIS_LABELS[a]}={triple[a - 1]:+d}"
                for a in (1, 2, 3)
                if used is None or (k, a) in used
            ]
            if parts:
                out.append(f"qubit {k}: " + " ".join(parts))
        return out


@dataclass(frozen=True)
class BoundResult:
    """An exact classical bound with the assignment attaining it."""

    beta_cl: float
    maximizer: LHVAssignment
    evaluations: int


def used_pairs(op: HSOperator) -> list[tuple[int, int]]:
    """Sorted (qubit, axis) pairs the operator actually measures."""
    pairs = {(k, a) for s in op.terms for k, a in enumerate(s.axes) if a != 0}
    return sorted(pairs)


def evaluate_assignment(op: HSOperator, assignment: LHVAssignment) -> float:
    """Operator value under one definite-outcome assignment."""
    if assignment.n != op.n:
        raise ValueError(f"assignment has {assignment.n} qubits, operator {op.n}")
    total = 0.0
    for s, c in op.terms.items():
        prod = 1
        for k, a in enumerate(s.axes):
            if a != 0:
                prod *= assignment.values[k][a - 1]
        total += c * prod
    return total


def _reject_identity(op: HSOperator) -> None:
    if abs(op.identity_coefficient) != 0.0:
        raise ValueError("operator has an all-identity component; subtract it first")


def _full_table(op: HSOperator, signs: dict[tuple[int, int], int]) -> LHVAssignment:
    table = tuple(
        tuple(signs.get((k, a), 1) for a in (1, 2, 3)) for k in range(op.n)
    )
    return LHVAssignment(table)


def classical_bound(
    op: HSOperator,
    chunk_size: int = DEFAULT_CHUNK,
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS,
) -> BoundResult:
    """Exact classical bound by exhaustive enumeration.

    All 2^m assignments over the m measured (qubit, axis) pairs are
    evaluated in chunks; unmeasured axes are fixed at +1.  Ties resolve
    to the lexicographically smallest assignment: pairs ordered by qubit
    then axis x, y, z, and +1 before -1.  Assignments are encoded as
    integers whose most significant bit is the first measured pair with
    bit 0 meaning +1, so the first maximum met in ascending order is
    exactly that assignment, independent of chunking.
    """
    _reject_identity(op)
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")
    pairs = used_pairs(op)
    m = len(pairs)
    if m > 63 or 2**m > max_assignments:
        raise ValueError(f"2^{m} assignments exceed the enumeration budget of {max_assignments}")
    bit_of = {pair: np.uint64(1) << np.uint64(m - 1 - j) for j, pair in enumerate(pairs)}
    masks = []
    coeffs = []
    for s, c in op.terms.items():
        mask = np.uint64(0)
        for k, a in enumerate(s.axes):
            if a != 0:
                mask |= bit_of[(k, a)]
        masks.append(mask)
        coeffs.append(c)

    total_count = 2**m
    best_value = -np.inf
    best_code = 0
    for start in range(0, total_count, chunk_size):
        stop = min(start + chunk_size, total_count)
        codes = np.arange(start, stop, dtype=np.uint64)
        values = np.zeros(codes.shape[0], dtype=float)
        for mask, c in zip(masks, coeffs):
            parity = (np.bitwise_count(codes & mask) & np.uint64(1)).astype(np.int8)
            values += c * (1 - 2 * parity)
        idx = int(np.argmax(values))
        if values[idx] > best_value:
            best_value = float(values[idx])
            best_code = start + idx

    signs = {pair: 1 - 2 * int((best_code >> (m - 1 - j)) & 1) for j, pair in enumerate(pairs)}
    return BoundResult(best_value, _full_table(op, signs), total_count)


def sampled_lower_bound(op: HSOperator, trials: int, seed: int = 0) -> float:
    """Best value over uniformly random assignments; never above the bound."""
    _reject_identity(op)
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    pairs = used_pairs(op)
    m = len(pairs)
    col_of = {pair: j for j, pair in enumerate(pairs)}
    rng = np.random.default_rng(seed)
    term_cols = [
        [col_of[(k, a)] for k, a in enumerate(s.axes) if a != 0] for s in op.terms
    ]
    coeffs = list(op.terms.values())
    best_value = -np.inf
    done = 0
    while done < trials:
        count = min(DEFAULT_CHUNK, trials - done)
        signs = (1 - 2 * rng.integers(0, 2, size=(count, m), dtype=np.int8)).astype(np.int8)
        values = np.zeros(count, dtype=float)
        for cols, c in zip(term_cols, coeffs):
            if cols:
                values += c * signs[:, cols].prod(axis=1)
            else:
                values += c
        best_value = max(best_value, float(values.max()))
        done += count
    return best_value
