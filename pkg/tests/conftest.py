"""Shared fixtures.

The two expensive artifacts — the symbolic derivation and the truncated-
Fock four-body oracle — are computed once per session and shared between
the module tests and the acceptance gate, with their wall-clock cost
recorded so runtime budgets can be asserted.
"""

import math
import time

import pytest

from jpocoupler import circuit, derivation, fock

TWO_PI = 2.0 * math.pi


def reference_point() -> circuit.CircuitParams:
    """The headline operating point used throughout the test suite."""
    return circuit.make_params(
        C_J=500e-15,
        C=0.5e-15,
        C_g=100e-15,
        n=1,
        alpha=0.0,
        omega=TWO_PI * 10e9,
        Omega=TWO_PI * 20e6,
    )


@pytest.fixture(scope="session")
def ref_params() -> circuit.CircuitParams:
    return reference_point()


@pytest.fixture(scope="session")
def derivation_run():
    """(DerivationResult, elapsed seconds) — full symbolic pipeline with
    the frozen-table regression check enabled."""
    t0 = time.monotonic()
    result = derivation.derive_effective_hamiltonian(check_golden=True)
    return result, time.monotonic() - t0


@pytest.fixture(scope="session")
def fock_run(ref_params):
    """(FourBodyReport, elapsed seconds) — truncated-Fock oracle at the
    headline operating point, default configuration."""
    t0 = time.monotonic()
    report = fock.verify_four_body(ref_params)
    return report, time.monotonic() - t0
