"""Constructive building blocks for factoring into irreducible matrices.

Every construction assembles block-triangular factors whose diagonal
blocks are irreducible and whose off-diagonal commutant corners are
forced to vanish by a spectral-disjointness condition (the Rosenblum
operator is then invertible). The existence proofs leave some scalars
free ("a large lambda", "a small lambda"); here those are found by a
geometric search, and each candidate is accepted only once its factors
pass the commutant oracle with a healthy margin.

Unless stated otherwise, pairs live in *corner coordinates*: a pair on a
``k``-dimensional corner is a pair of ``k x k`` matrices, and operations
combining corners return matrices in direct-sum coordinates (first
corner first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .commutant import IrreducibilityCertificate, commutant_dimension, is_irreducible
from .errors import (
    ConstructionError,
    DegenerateError,
    IndeterminateError,
    PreconditionError,
    SeparationError,
)
from .linalg import (
    DEFAULT_TOL,
    PartialIsometry,
    Projection,
    ToleranceConfig,
    adjoint,
    as_matrix,
    block_diag,
    eigenvalues,
    fro,
    numerical_rank,
    opnorm,
    polar_partial_isometry,
    spectrum_distance,
)

SEARCH_STEPS = 60


@dataclass(frozen=True, eq=False)
class FactorPair:
    left: np.ndarray
    right: np.ndarray
    target: np.ndarray

    @property
    def residual(self) -> float:
        return fro(self.left @ self.right - self.target)

    def within(self, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
        return self.residual <= cfg.residual_tol * (1 + fro(self.target))


@dataclass(frozen=True, eq=False)
class IrrInvPair:
    """``a`` nonzero irreducible, ``b`` invertible irreducible."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if self.a.shape != self.b.shape:
            raise PreconditionError("pair factors must have equal shapes")
        if not np.any(np.abs(self.a) > 0):
            raise PreconditionError("left factor of an IrrInvPair must be nonzero")

    @property
    def product(self) -> np.ndarray:
        return self.a @ self.b

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def scaled(self, c) -> IrrInvPair:
        return IrrInvPair(c * self.a, self.b / c)

    def balanced(self) -> IrrInvPair:
        """Rescale so both factors have the same operator norm."""
        return self.scaled(math.sqrt(opnorm(self.b) / opnorm(self.a)))

    def as_factor_pair(self) -> FactorPair:
        return FactorPair(self.a, self.b, self.product)


@dataclass(frozen=True, eq=False)
class Factorization:
    factors: list
    residual: float
    certificates: list
    route: str
    warnings: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# helpers


def _margin(M, cfg):
    """Smallest retained commutant singular value, or -1 if not irreducible."""
    try:
        dim, gap = commutant_dimension(M, cfg)
    except IndeterminateError:
        return -1.0
    return gap if dim == 1 else -1.0


def _search(candidates, build, cfg, what):
    """Run ``build`` over candidates until both factors certify.

    ``build`` returns ``(X, Y)`` or None when the candidate misses a
    separation condition. The first candidate whose factors clear
    ``10 * irr_tol`` is returned; otherwise the first one that merely
    certifies.
    """
    fallback = None
    separated = False
    for cand in candidates:
        out = build(cand)
        if out is None:
            continue
        separated = True
        m = min(_margin(out[0], cfg), _margin(out[1], cfg))
        if m >= 10 * cfg.irr_tol:
            return out
        if m > 0 and fallback is None:
            fallback = out
    if fallback is not None:
        return fallback
    if not separated:
        raise SeparationError(f"{what}: scalar search exhausted without spectral separation")
    raise ConstructionError(f"{what}: no candidate produced certified irreducible factors", route=what)


def _geometric(start, factor, steps=SEARCH_STEPS):
    return [start * factor**i for i in range(steps)]


def _certify(matrices, cfg, what):
    certs = []
    for M in matrices:
        try:
            cert = is_irreducible(M, cfg)
        except IndeterminateError as exc:
            raise ConstructionError(f"{what}: {exc}", route=what) from exc
        if not cert.verdict:
            raise ConstructionError(f"{what}: output factor is reducible", route=what)
        certs.append(cert)
    return certs


def _require_irreducible(M, cfg, what):
    try:
        cert = is_irreducible(M, cfg)
    except IndeterminateError as exc:
        raise PreconditionError(f"{what}: {exc}") from exc
    if not cert.verdict:
        raise PreconditionError(f"{what} must be irreducible")


def _commutes(T, P, cfg):
    return fro(T @ P - P @ T) <= cfg.residual_tol * (1 + fro(T))


def ginibre(k, rng) -> np.ndarray:
    """Matrix with i.i.d. standard complex Gaussian entries."""
    return (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))) / math.sqrt(2)


def invertible_irreducible(k, rng, cfg: ToleranceConfig = DEFAULT_TOL, avoid=(), scale=1.0,
                           attempts=20) -> np.ndarray:
    """Shifted Ginibre sample that is irreducible and invertible.

    The sample is ``mu I + rho G / ||G||`` with ``rho = scale / 2`` and
    ``|mu| = R + 2 rho``, where ``R`` bounds the points in ``avoid``. Its
    spectrum therefore lies in a disk at distance at least ``rho`` from
    ``avoid`` and from 0.
    """
    pts = np.concatenate([np.atleast_1d(np.asarray(a, dtype=complex)) for a in avoid]) if avoid else np.zeros(0)
    R = float(np.abs(pts).max()) if pts.size else 0.0
    rho = scale / 2
    for _ in range(attempts):
        G = ginibre(k, rng)
        theta = rng.uniform(0, 2 * np.pi)
        mu = (R + 2 * rho) * np.exp(1j * theta)
        X = mu * np.eye(k) + rho * G / opnorm(G)
        if k == 1 or _margin(X, cfg) >= 10 * cfg.irr_tol:
            return X
    raise ConstructionError("could not sample an invertible irreducible matrix")


# ---------------------------------------------------------------------------
# single-corner constructions


def resolvent_split(T, cfg: ToleranceConfig = DEFAULT_TOL, lam=None) -> IrrInvPair:
    """Split an irreducible ``T`` as ``X Y`` with ``Y = lam I - T`` invertible.

    ``X = T (lam I - T)^{-1}`` and ``Y`` are both rational functions of
    ``T`` generating the same algebra, so both are irreducible and they
    commute. By default ``lam = 2 (1 + ||T||)``.
    """
    T = as_matrix(T)
    n = T.shape[0]
    _require_irreducible(T, cfg, "resolvent_split input")
    if lam is None:
        lam = 2.0 * (1.0 + opnorm(T))
    if spectrum_distance(eigenvalues(T), [lam]) <= cfg.sep_tol:
        raise PreconditionError(f"lam={lam} is too close to the spectrum of T")
    Y = lam * np.eye(n) - T
    X = T @ np.linalg.inv(Y)
    return IrrInvPair(X, Y)


def build_triangular(T11, T21, T22, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Assemble ``[[T11, 0], [T21, T22]]`` after checking the hypotheses.

    With ``T11`` irreducible, ``T21`` of full row rank and disjoint
    spectra of ``T11`` and ``T22``, the result is irreducible.
    """
    T11 = as_matrix(T11)
    T22 = as_matrix(T22)
    T21 = as_matrix(T21, square=False)
    k1, k2 = T11.shape[0], T22.shape[0]
    if T21.shape != (k2, k1):
        raise PreconditionError(f"T21 has shape {T21.shape}, expected {(k2, k1)}")
    _require_irreducible(T11, cfg, "T11")
    if numerical_rank(T21, cfg) != k2:
        raise PreconditionError("range of T21 is not the whole second block (rank deficient)")
    sep = spectrum_distance(eigenvalues(T11), eigenvalues(T22))
    if sep <= cfg.sep_tol:
        raise PreconditionError(f"spectra of T11 and T22 are not disjoint (separation {sep:.3g})")
    return np.block([[T11, np.zeros((k1, k2))], [T21, T22]])


def _coordinates(P: Projection):
    """Unitary whose first ``rank`` columns span ``P`` and the rest ``I - P``."""
    return np.hstack([P.basis, P.complement().basis])


def half_exceed(T, P: Projection, corner_pair: IrrInvPair | None = None,
                cfg: ToleranceConfig = DEFAULT_TOL) -> FactorPair:
    """Factor ``T`` reduced by ``P`` with ``rank P >= rank (I - P)``.

    ``corner_pair`` factors the compression of ``T`` to ``P`` in the
    coordinates of ``P.basis``; when omitted it is obtained from
    :func:`resolvent_split`, which requires that compression to be
    irreducible. The factors are

        X = [[A, 0], [lam V, lam I]],   Y = [[B, 0], [-V B, T2 / lam]]

    with ``V`` a co-isometry from the ``P`` corner onto the complement.
    """
    T = as_matrix(T)
    n = T.shape[0]
    k1, k2 = P.rank, n - P.rank
    if not _commutes(T, P.matrix, cfg):
        raise PreconditionError("T does not commute with P")
    if k1 < k2 or k1 == 0:
        raise PreconditionError(f"rank(P)={k1} is smaller than rank(I-P)={k2}")
    W = _coordinates(P)
    Tc = adjoint(W) @ T @ W
    T1, T2 = Tc[:k1, :k1], Tc[k1:, k1:]
    if corner_pair is None:
        corner_pair = resolvent_split(T1, cfg)
    elif fro(corner_pair.product - T1) > cfg.residual_tol * (1 + fro(T1)):
        raise PreconditionError("corner_pair does not factor the compression of T to P")
    A, B = corner_pair.a, corner_pair.b
    if numerical_rank(B, cfg) < k1:
        raise PreconditionError("right factor of corner_pair is not invertible")
    if k2 == 0:
        return FactorPair(W @ A @ adjoint(W), W @ B @ adjoint(W), T)
    U, _, _ = np.linalg.svd(B)
    V = adjoint(U[:, :k2])
    eig_a, eig_b, eig_t2 = eigenvalues(A), eigenvalues(B), eigenvalues(T2)
    I2 = np.eye(k2)
    Z = np.zeros((k1, k2))

    def build(lam):
        if spectrum_distance(eig_a, [lam]) <= cfg.sep_tol:
            return None
        if spectrum_distance(eig_b, eig_t2 / lam) <= cfg.sep_tol:
            return None
        X = np.block([[A, Z], [lam * V, lam * I2]])
        Y = np.block([[B, Z], [-V @ B, T2 / lam]])
        return X, Y

    X, Y = _search(_geometric(2.0 * (1.0 + opnorm(T)), 2.0), build, cfg, "half_exceed")
    _certify((X, Y), cfg, "half_exceed")
    return FactorPair(W @ X @ adjoint(W), W @ Y @ adjoint(W), T)


def half_exact(T, P: Projection, cfg: ToleranceConfig = DEFAULT_TOL, rng=None) -> FactorPair:
    """Factor ``T`` reduced by a projection ``P`` of rank ``n / 2``.

    With matrix units identifying the two halves and an invertible
    irreducible ``X1`` on the first half,

        X = [[lam T1 X1, 0], [lam X1, X1]]
        Y = [[X1^{-1} / lam, 0], [-X1^{-1}, X1^{-1} T2]]

    and ``lam`` is shrunk until the two spectral conditions hold.
    """
    T = as_matrix(T)
    n = T.shape[0]
    rng = np.random.default_rng(rng)
    if n % 2:
        raise PreconditionError("P ~ I - P is impossible in odd dimension")
    if P.rank != n // 2:
        raise PreconditionError(f"rank(P)={P.rank} differs from rank(I-P)={n - P.rank}")
    if not _commutes(T, P.matrix, cfg):
        raise PreconditionError("T does not commute with P")
    k = n // 2
    W = _coordinates(P)
    Tc = adjoint(W) @ T @ W
    T1, T2 = Tc[:k, :k], Tc[k:, k:]
    Z = np.zeros((k, k))
    start = 1.0 / (1.0 + opnorm(T))
    for _ in range(5):
        X1 = invertible_irreducible(k, rng, cfg)
        X1inv = np.linalg.inv(X1)
        eig_x1 = eigenvalues(X1)
        eig_x1inv = eigenvalues(X1inv)
        eig_t1x1 = eigenvalues(T1 @ X1)
        eig_x1t2 = eigenvalues(X1inv @ T2)

        def build(lam):
            if spectrum_distance(lam * eig_t1x1, eig_x1) <= cfg.sep_tol:
                return None
            if spectrum_distance(eig_x1inv / lam, eig_x1t2) <= cfg.sep_tol:
                return None
            X = np.block([[lam * T1 @ X1, Z], [lam * X1, X1]])
            Y = np.block([[X1inv / lam, Z], [-X1inv, X1inv @ T2]])
            return X, Y

        try:
            X, Y = _search(_geometric(start, 0.5), build, cfg, "half_exact")
        except ConstructionError:
            continue
        _certify((X, Y), cfg, "half_exact")
        return FactorPair(W @ X @ adjoint(W), W @ Y @ adjoint(W), T)
    raise SeparationError("half_exact: no admissible lam after resampling X1")


# ---------------------------------------------------------------------------
# combining corners


def _kernel_vector(A, cfg):
    U, s, Wh = np.linalg.svd(A)
    r = numerical_rank(A, cfg)
    return adjoint(Wh[r:])[:, 0] if r < A.shape[1] else None


def closed_range_pair(pair1: IrrInvPair, pair2: IrrInvPair, cfg: ToleranceConfig = DEFAULT_TOL) -> IrrInvPair:
    """Combine pairs on two orthogonal corners into one pair on their sum.

    ``pair1`` is rescaled by ``c`` until ``(c A1)^*(c A1) >= (1 + 2||A2||^2)``
    on the range of ``A1^*`` and the spectra of ``B1 / c`` and ``B2`` are
    disjoint. With a rank-one partial isometry ``V = w v^*`` from corner 1
    to corner 2 (``A2 w != 0``; ``v`` in the kernel of ``A1`` when ``A1`` is
    singular) the result is

        A = [[c A1, 0], [A2 V, A2]],   B = [[B1 / c, 0], [-V B1 / c, B2]].
    """
    A1, B1 = pair1.a, pair1.b
    A2, B2 = pair2.a, pair2.b
    k1, k2 = A1.shape[0], A2.shape[0]
    s1 = np.linalg.svd(A1, compute_uv=False)
    r1 = numerical_rank(A1, cfg)
    if r1 == 0:
        raise PreconditionError("left factor of pair1 must be nonzero")
    if numerical_rank(A2, cfg) == 0:
        raise PreconditionError("left factor of pair2 must be nonzero")
    smin = s1[r1 - 1]
    c0 = math.sqrt(1.0 + 2.0 * opnorm(A2) ** 2) / smin
    _, _, Wh2 = np.linalg.svd(A2)
    w = adjoint(Wh2)[:, 0]
    v = _kernel_vector(A1, cfg)
    if v is None:
        Ub, _, _ = np.linalg.svd(B1)
        v = Ub[:, 0]
    V = np.outer(w, v.conj())
    eig_b1, eig_b2 = eigenvalues(B1), eigenvalues(B2)
    Z = np.zeros((k1, k2))

    def build(c):
        if spectrum_distance(eig_b1 / c, eig_b2) <= cfg.sep_tol:
            return None
        X = np.block([[c * A1, Z], [A2 @ V, A2]])
        Y = np.block([[B1 / c, Z], [-V @ B1 / c, B2]])
        return X, Y

    X, Y = _search(_geometric(c0, 2.0), build, cfg, "closed_range_pair")
    _certify((X, Y), cfg, "closed_range_pair")
    return IrrInvPair(X, Y)


def closed_range_chain(pairs, cfg: ToleranceConfig = DEFAULT_TOL) -> IrrInvPair:
    """Left fold of :func:`closed_range_pair` over ``pairs``."""
    pairs = list(pairs)
    if not pairs:
        raise PreconditionError("closed_range_chain needs at least one pair")
    acc = pairs[0]
    for p in pairs[1:]:
        acc = closed_range_pair(acc, p, cfg)
    return acc


def add_zero_even(pair: FactorPair, k: int, cfg: ToleranceConfig = DEFAULT_TOL, rng=None) -> FactorPair:
    """Extend ``T = A B`` on an ``m``-corner to ``T (+) 0_k`` for even ``k``.

    The zero directions are split into halves ``P1``, ``P2`` identified by
    matrix units ``E21``. With ``X1`` invertible irreducible on ``P1``
    (spectrum away from those of ``A`` and ``B``), ``X2`` its copy on
    ``P2`` and ``V`` a rank-one partial isometry into ``P2`` with
    ``V B != 0``::

        X = [[A, 0, 0], [0, 0, 0], [X2 V, E21, X2]]
        Y = [[B, 0, 0], [0, X1, 0], [-V B, -E21, 0]]
    """
    A = as_matrix(pair.left)
    B = as_matrix(pair.right)
    T = as_matrix(pair.target)
    if k < 2 or k % 2:
        raise PreconditionError(f"number of zero directions must be even and >= 2, got {k}")
    if numerical_rank(T, cfg) == 0:
        raise PreconditionError("target must be nonzero")
    rng = np.random.default_rng(rng)
    m, h = A.shape[0], k // 2
    # balance the scales of A and B; the product is unchanged
    c = math.sqrt(opnorm(B) / opnorm(A))
    A, B = c * A, B / c
    s = opnorm(A)
    eig_a, eig_b = eigenvalues(A), eigenvalues(B)
    Ub, _, _ = np.linalg.svd(B)
    V = np.zeros((h, m), dtype=complex)
    V[0] = Ub[:, 0].conj()
    I, Zmh, Zhh = np.eye(h), np.zeros((m, h)), np.zeros((h, h))
    for _ in range(10):
        X1 = invertible_irreducible(h, rng, cfg, avoid=(eig_a, eig_b), scale=s)
        eig_x1 = eigenvalues(X1)
        if min(spectrum_distance(eig_a, eig_x1), spectrum_distance(eig_b, eig_x1)) <= cfg.sep_tol:
            continue
        X = np.block([
            [A, Zmh, Zmh],
            [Zmh.T, Zhh, Zhh],
            [X1 @ V, I, X1],
        ])
        Y = np.block([
            [B, Zmh, Zmh],
            [Zmh.T, X1, Zhh],
            [-V @ B, -I, Zhh],
        ])
        if min(_margin(X, cfg), _margin(Y, cfg)) > 0:
            _certify((X, Y), cfg, "add_zero_even")
            return FactorPair(X, Y, block_diag(T, np.zeros((k, k))))
    raise ConstructionError("add_zero_even: no sampled X1 gave certified factors", route="add_zero_even")


def add_zeros(pair: IrrInvPair, k: int, cfg: ToleranceConfig = DEFAULT_TOL, rng=None) -> FactorPair:
    """Extend a pair on an ``m``-corner to ``(A B) (+) 0_k``.

    Even ``k`` goes straight to :func:`add_zero_even`. Odd ``k`` first
    absorbs one zero direction with :func:`half_exceed` (the corner is at
    least as large as one direction), then adds the remaining even count.
    """
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    rng = np.random.default_rng(rng)
    if k == 0:
        return pair.as_factor_pair()
    if k % 2 == 0:
        return add_zero_even(pair.as_factor_pair(), k, cfg, rng)
    m = pair.dim
    Tm = block_diag(pair.product, np.zeros((1, 1)))
    P = Projection.from_basis(np.eye(m + 1, m))
    fp = half_exceed(Tm, P, pair, cfg)
    if k == 1:
        return fp
    return add_zero_even(fp, k - 1, cfg, rng)


# ---------------------------------------------------------------------------
# many corners at once


def nonvanishing_partial_isometry(parts, Q: Projection, cfg: ToleranceConfig = DEFAULT_TOL,
                                  targets=None) -> PartialIsometry:
    """Partial isometry ``V`` from ``Q`` into ``sum parts`` with ``P_j V != 0``.

    ``V`` is the polar part of ``sum_j 2^{-j} V_j`` where ``V_j`` is a
    maximal-rank partial isometry from the range of ``Q`` into the range of
    ``P_j``. When ``targets`` (operators ``A_j`` supported on ``P_j``) are
    given, ``V_j`` lands on the top right-singular directions of ``A_j`` so
    that ``A_j V != 0`` as well.
    """
    parts = list(parts)
    if not parts:
        raise PreconditionError("parts must be nonempty")
    if Q.rank == 0:
        raise PreconditionError("Q must be nonzero")
    for j, P in enumerate(parts):
        if P.rank == 0:
            raise PreconditionError(f"part {j} is zero")
        for Pk in parts[j + 1:]:
            if fro(P.matrix @ Pk.matrix) > cfg.residual_tol:
                raise PreconditionError("parts are not mutually orthogonal")
    UQ = Q.basis
    T = np.zeros((Q.n, Q.n), dtype=complex)
    for j, P in enumerate(parts):
        Uj = P.basis
        if targets is not None:
            _, _, Wh = np.linalg.svd(np.asarray(targets[j]) @ Uj)
            Uj = Uj @ adjoint(Wh)
        r = min(Uj.shape[1], UQ.shape[1])
        T += 2.0 ** -(j + 1) * (Uj[:, :r] @ adjoint(UQ[:, :r]))
    return polar_partial_isometry(T, cfg)


def _norm_distinct(norms, gap):
    x = np.sort(np.asarray(norms))
    return x.size < 2 or np.min(np.diff(x)) > gap


def prop_key_factor(pairs, cfg: ToleranceConfig = DEFAULT_TOL, rng=None) -> FactorPair:
    """Factor ``(+)_j A_j B_j`` over ``N >= 2`` corners at once.

    Requires ``B_1`` and ``A_2`` invertible and ``dim 1 <= dim 2``. After
    rescaling so all ``||A_j||`` (and all ``||B_j||``) are distinct and
    the spectrum of ``A_2`` (resp. ``B_1``) is isolated from the other
    blocks, with ``U`` an isometry from corner 1 into corner 2 and ``V`` a
    partial isometry from corner 1 into the remaining corners::

        X = [[A1, 0, 0], [A2 U, A2, 0], [X3 V, 0, X3]]
        Y = [[B1, 0, 0], [-U B1, B2, 0], [-V B1, 0, Y3]]

    Pairs are ``(a, b)`` objects in corner coordinates; the result is in
    direct-sum coordinates.
    """
    pairs = list(pairs)
    rng = np.random.default_rng(rng)
    N = len(pairs)
    if N < 2:
        raise PreconditionError("prop_key_factor needs at least two blocks")
    dims = [p.a.shape[0] for p in pairs]
    A = [np.asarray(p.a, dtype=complex) for p in pairs]
    B = [np.asarray(p.b, dtype=complex) for p in pairs]
    for j in range(N):
        if numerical_rank(A[j], cfg) == 0 or numerical_rank(B[j], cfg) == 0:
            raise PreconditionError(f"block {j} has a zero factor")
    if numerical_rank(B[0], cfg) < dims[0]:
        raise PreconditionError("right factor of block 1 must be invertible")
    if numerical_rank(A[1], cfg) < dims[1]:
        raise PreconditionError("left factor of block 2 must be invertible")
    if dims[0] > dims[1]:
        raise PreconditionError("block 1 must not be larger than block 2")
    nA = np.array([opnorm(a) for a in A])
    nB = np.array([opnorm(b) for b in B])
    eA = [eigenvalues(a) for a in A]
    eB = [eigenvalues(b) for b in B]
    gap = 10 * cfg.irr_tol * max(1.0, nA.max(), nB.max())

    # scalars for blocks 3..N in [1, 2], spread evenly then re-randomized
    lam = np.ones(N)
    rest = list(range(2, N))
    for attempt in range(100):
        if attempt == 0:
            lam[rest] = 1.0 + np.arange(1, len(rest) + 1) / (len(rest) + 1)
        else:
            lam[rest] = rng.uniform(1.0, 2.0, len(rest))
        if _norm_distinct(lam[rest] * nA[rest], gap) and _norm_distinct(nB[rest] / lam[rest], gap):
            break
    else:
        raise DegenerateError("could not make block norms pairwise distinct")

    k1, k2 = dims[0], dims[1]
    k3 = sum(dims[2:])
    U = np.eye(k2, k1, dtype=complex)
    if k3:
        n = k1 + k3
        parts = []
        targets = []
        off = k1
        for j in range(2, N):
            parts.append(Projection.from_basis(np.eye(n)[:, off:off + dims[j]]))
            Tj = np.zeros((n, n), dtype=complex)
            Tj[off:off + dims[j], off:off + dims[j]] = A[j]
            targets.append(Tj)
            off += dims[j]
        Qp = Projection.from_basis(np.eye(n, k1))
        V = nonvanishing_partial_isometry(parts, Qp, cfg, targets).matrix[k1:, :k1]
    else:
        V = np.zeros((0, k1), dtype=complex)

    def build(t):
        l = lam.copy()
        l[1] = 2.0**t
        l[0] = 2.0**-t
        # (1') spectrum of A2 isolated, (2') spectrum of B1 isolated
        for j in range(N):
            if j != 1 and spectrum_distance(l[1] * eA[1], l[j] * eA[j]) <= cfg.sep_tol:
                return None
            if j != 0 and spectrum_distance(eB[0] / l[0], eB[j] / l[j]) <= cfg.sep_tol:
                return None
        # (3') pairwise distinct norms
        if not (_norm_distinct(l * nA, gap) and _norm_distinct(nB / l, gap)):
            return None
        As = [l[j] * A[j] for j in range(N)]
        Bs = [B[j] / l[j] for j in range(N)]
        X3 = block_diag(*As[2:]) if k3 else np.zeros((0, 0))
        Y3 = block_diag(*Bs[2:]) if k3 else np.zeros((0, 0))
        X = block_diag(As[0], As[1], X3)
        Y = block_diag(Bs[0], Bs[1], Y3)
        X[k1:k1 + k2, :k1] = As[1] @ U
        Y[k1:k1 + k2, :k1] = -U @ Bs[0]
        if k3:
            X[k1 + k2:, :k1] = X3 @ V
            Y[k1 + k2:, :k1] = -V @ Bs[0]
        return X, Y

    X, Y = _search(range(SEARCH_STEPS), build, cfg, "prop_key")
    _certify((X, Y), cfg, "prop_key")
    target = block_diag(*[a @ b for a, b in zip(A, B)])
    return FactorPair(X, Y, target)


# ---------------------------------------------------------------------------
# the zero matrix


def jordan_block(n) -> np.ndarray:
    """Nilpotent Jordan block with ones on the superdiagonal."""
    return np.eye(n, k=1, dtype=complex)


def zero_factor(n: int, cfg: ToleranceConfig = DEFAULT_TOL, rng=None) -> Factorization:
    """Write the ``n x n`` zero matrix as a product of irreducible matrices.

    Two factors when ``n = 1`` or ``n`` is even; three when ``n`` is odd
    and at least 3, where two are impossible. The odd case multiplies the
    Jordan block ``J`` by a factorization of the rank-one projection onto
    ``ker J``.
    """
    if n < 1:
        raise PreconditionError("n must be positive")
    rng = np.random.default_rng(rng)
    if n == 1:
        factors = [np.zeros((1, 1), dtype=complex), np.ones((1, 1), dtype=complex)]
    elif n % 2 == 0:
        P = Projection.from_basis(np.eye(n, n // 2))
        fp = half_exact(np.zeros((n, n), dtype=complex), P, cfg, rng)
        factors = [fp.left, fp.right]
    else:
        J = jordan_block(n)
        # e_1 spans ker J; factor e_1 e_1^* as [1] (+) 0_{n-1}
        fp = add_zeros(resolvent_split(np.ones((1, 1)), cfg), n - 1, cfg, rng)
        factors = [J, fp.left, fp.right]
    prod = factors[0]
    for F in factors[1:]:
        prod = prod @ F
    certs = _certify(factors, cfg, "zero_parity")
    return Factorization(factors, fro(prod), certs, "zero_parity")
