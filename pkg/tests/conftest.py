"""Shared fixtures: the reference catalog and random-state helpers."""

import numpy as np
import pytest

from hswit.pauli_core import DensityMatrix
from hswit.states import catalog


@pytest.fixture(scope="session")
def cat():
    """The six reference entries, built once per test run."""
    return catalog()


def random_density(rng: np.random.Generator, n: int) -> DensityMatrix:
    """A random full-rank density matrix (Ginibre construction)."""
    dim = 2**n
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return DensityMatrix(rho / np.trace(rho).real, n)


@pytest.fixture
def make_density():
    return random_density
