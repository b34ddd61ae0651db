from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import assert_irreducible, ginibre, unitary
from irrfactor.commutant import is_irreducible
from irrfactor.constructions import Factorization
from irrfactor.errors import SamplingError
from irrfactor.factorizer import (
    ROUTES,
    CertificationError,
    _balanced_subset,
    factor,
    random_irreducible,
    verify,
)
from irrfactor.linalg import ToleranceConfig, block_diag


def product(factors):
    out = factors[0]
    for F in factors[1:]:
        out = out @ F
    return out


def check(T, f):
    T = np.asarray(T, dtype=complex)
    assert f.route in ROUTES
    assert np.linalg.norm(product(f.factors) - T) <= 1e-8 * (1 + np.linalg.norm(T))
    assert f.residual == pytest.approx(np.linalg.norm(product(f.factors) - T), abs=1e-15)
    assert len(f.certificates) == len(f.factors)
    assert all(c.verdict for c in f.certificates)
    for F in f.factors:
        assert_irreducible(F)
    assert verify(T, f).ok


def test_jordan_block():
    T = [[0, 1], [0, 0]]
    f = factor(T)
    assert f.route == "resolvent" and len(f.factors) == 2
    check(T, f)


def test_odd_zero():
    f = factor(np.zeros((3, 3)))
    assert f.route == "zero_parity" and len(f.factors) == 3
    check(np.zeros((3, 3)), f)


def test_diag_with_zeros():
    T = np.diag([1.0, 2.0, 0.0, 0.0])
    f = factor(T)
    assert len(f.factors) == 2
    check(T, f)


@pytest.mark.parametrize("T, route", [
    (np.diag([1.0, 2.0, 3.0]), "chain+add_zeros"),
    (np.diag([1.0, 0.0, 0.0]), "chain+add_zeros"),
    (np.diag([5.0, 0.0]), "half_exact"),
    (np.eye(4), "half_exact"),
    (np.zeros((1, 1)), "zero_parity"),
    (np.zeros((4, 4)), "zero_parity"),
    ([[3.0]], "resolvent"),
])
def test_routes(T, route):
    f = factor(T)
    assert f.route == route
    check(T, f)


def test_half_exceed_route(rng):
    # one nonzero irreducible corner of size 2 plus one zero direction
    U = unitary(3, rng)
    T = U @ block_diag(ginibre(2, rng), [[0]]) @ U.conj().T
    f = factor(T)
    assert f.route == "half_exceed"
    check(T, f)


def test_balanced_subset():
    assert _balanced_subset([1, 1]) == [0]
    assert _balanced_subset([3, 1, 2]) == [0]
    dims = [2, 3, 1, 4]
    assert sum(dims[i] for i in _balanced_subset(dims)) == 5
    assert _balanced_subset([3, 1]) is None
    assert _balanced_subset([1, 2]) is None


def test_indeterminate_input():
    with pytest.raises(CertificationError):
        factor(np.array([[1, 1e-8], [0, 2]]))


def test_seed_determinism(rng):
    T = block_diag(ginibre(2, rng), ginibre(2, rng))
    a, b = factor(T, seed=3), factor(T, seed=3)
    for X, Y in zip(a.factors, b.factors):
        assert np.array_equal(X, Y)


def test_verify_detects_tampering(rng):
    T = ginibre(3, rng)
    f = factor(T)
    scaled = Factorization([2 * f.factors[0], f.factors[1]], f.residual, f.certificates, f.route)
    report = verify(T, scaled)
    assert not report.ok
    assert [c.name for c in report.failures()] == ["residual"]
    reducible = Factorization([np.diag([1.0, 2.0, 3.0]), np.linalg.inv(np.diag([1.0, 2.0, 3.0])) @ T],
                              0.0, [], "resolvent")
    report = verify(T, reducible)
    assert not report.ok
    assert {c.name for c in report.failures()} == {"factor0.commutant", "factor0.burnside"}
    two_for_odd_zero = Factorization([np.zeros((3, 3)), np.zeros((3, 3))], 0.0, [], "zero_parity")
    assert "factor_count" in {c.name for c in verify(np.zeros((3, 3)), two_for_odd_zero).failures()}


def test_verify_shape_mismatch():
    f = Factorization([np.eye(2), np.eye(3)], 0.0, [], "resolvent")
    report = verify(np.eye(2), f)
    assert not report.ok and report.failures()[0].name == "shapes"


def test_scale_is_folded_into_first_factor(rng):
    T = 1e6 * block_diag(ginibre(2, rng), [[0]])
    check(T, factor(T))
    check(1e-6 * T, factor(1e-6 * T))


def test_random_irreducible():
    G = random_irreducible(4, seed=1)
    assert G.shape == (4, 4)
    assert is_irreducible(G).verdict
    assert np.array_equal(G, random_irreducible(4, seed=1))
    with pytest.raises(ValueError):
        random_irreducible(0)


def test_random_irreducible_sampling_failure():
    # an irr_tol above every commutant singular value makes every sample indeterminate
    with pytest.raises(SamplingError):
        random_irreducible(3, seed=0, cfg=ToleranceConfig(irr_tol=1e3))


FAMILIES = ["dense", "hermitian", "unitary", "nilpotent", "rank1", "scalar", "repeated", "zero"]


def sample(kind, n, rng):
    if kind == "dense":
        return ginibre(n, rng)
    if kind == "hermitian":
        G = ginibre(n, rng)
        return G + G.conj().T
    if kind == "unitary":
        return unitary(n, rng)
    if kind == "nilpotent":
        U = unitary(n, rng)
        return U @ np.triu(ginibre(n, rng), 1) @ U.conj().T
    if kind == "rank1":
        return np.outer(ginibre(n, rng)[:, 0], ginibre(n, rng)[0])
    if kind == "scalar":
        return complex(*rng.standard_normal(2)) * np.eye(n)
    if kind == "repeated":
        k = int(rng.integers(1, n + 1))
        B = ginibre(k, rng)
        blocks = [B] * (n // k) + ([ginibre(n % k, rng)] if n % k else [])
        U = unitary(n, rng)
        return U @ block_diag(*blocks) @ U.conj().T
    if kind == "zero":
        return np.zeros((n, n))
    raise ValueError(kind)


@pytest.mark.parametrize("kind", FAMILIES)
@settings(max_examples=15, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_factor_families(kind, n, seed):
    T = sample(kind, n, np.random.default_rng(seed))
    f = factor(T, seed=seed)
    check(T, f)
    expected = 3 if (kind == "zero" and n % 2 == 1 and n >= 3) else 2
    assert len(f.factors) == expected


@settings(max_examples=20, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), st.booleans()), min_size=1, max_size=4),
       st.integers(0, 2**32 - 1))
def test_factor_block_structures(blocks, seed):
    # random mixtures of irreducible and zero corners in rotated coordinates
    rng = np.random.default_rng(seed)
    mats = [ginibre(k, rng) if nonzero else np.zeros((k, k)) for k, nonzero in blocks]
    n = sum(k for k, _ in blocks)
    U = unitary(n, rng)
    T = U @ block_diag(*mats) @ U.conj().T
    f = factor(T, seed=seed)
    check(T, f)
