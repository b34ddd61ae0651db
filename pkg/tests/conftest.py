from __future__ import annotations

import numpy as np
import pytest

from irrfactor.commutant import commutation_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


def ginibre(k, rng):
    return (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))) / np.sqrt(2)


def unitary(k, rng):
    Q, R = np.linalg.qr(ginibre(k, rng))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def brute_commutant_dim(T, tol=1e-8):
    """Commutant dimension from numpy's rank of the raw commutation system.

    Independent of the package's normalization and thresholds.
    """
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    if n == 1:
        return 1
    K = commutation_matrix(T / max(np.linalg.norm(T), 1e-300))
    return n * n - np.linalg.matrix_rank(K, tol=tol)


def assert_irreducible(M):
    assert brute_commutant_dim(M) == 1


# -- acceptance summary ------------------------------------------------------
# Acceptance tests record one line per criterion; the lines are printed at
# the end of the run (and immediately, for runs with output capture off).

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(number, title, passed, detail):
        line = f"[criterion {number}] {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
