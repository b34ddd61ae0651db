"""Dense complex matrix primitives.

Matrices are plain ``numpy`` complex arrays. The helpers here are the
only place rank and spectral decisions are turned into thresholds, so
every construction downstream reads its numerics from a
:class:`ToleranceConfig`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConvergenceError, PreconditionError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used by every decision in the package.

    Attributes
    ----------
    rank_tol
        Relative singular-value cutoff: values at or below
        ``rank_tol * sigma_max`` count as zero.
    sep_tol
        Minimum eigenvalue distance accepted as "disjoint spectra".
    residual_tol
        Relative acceptance bound for products and commutation checks.
    irr_tol
        Smallest non-null singular value of the normalized commutation
        system that still gives a confident verdict.
    """

    rank_tol: float = 1e-9
    sep_tol: float = 1e-6
    residual_tol: float = 1e-8
    irr_tol: float = 1e-7

    def __post_init__(self):
        for name in ("rank_tol", "sep_tol", "residual_tol", "irr_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if self.rank_tol >= 1:
            raise ValueError("rank_tol must be < 1")


DEFAULT_TOL = ToleranceConfig()


def as_matrix(M, square=True) -> np.ndarray:
    """Return ``M`` as a finite complex 2-D array (a copy)."""
    A = np.array(M, dtype=complex)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2:
        raise PreconditionError(f"expected a 2-D matrix, got shape {A.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
    if A.size == 0:
        raise PreconditionError("empty matrix")
    if not np.all(np.isfinite(A)):
        raise PreconditionError("matrix has non-finite entries")
    return A


def adjoint(M) -> np.ndarray:
    return np.conj(np.asarray(M)).T


def fro(M) -> float:
    return float(np.linalg.norm(M))


def opnorm(M) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def block_diag(*blocks) -> np.ndarray:
    """Direct sum of square (or rectangular) blocks."""
    blocks = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=complex)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


# ---------------------------------------------------------------------------
# eigenvalues: Householder reduction + shifted QR


def hessenberg(M) -> np.ndarray:
    """Unitarily similar upper Hessenberg form via Householder reflectors."""
    H = np.array(M, dtype=complex)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, :])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _givens(x, y):
    r = np.hypot(abs(x), abs(y))
    if r == 0.0:
        return 1.0 + 0j, 0j
    return x / r, y / r


def _wilkinson_shift(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    tr = a + d
    det = a * d - b * c
    disc = np.sqrt(tr * tr / 4 - det)
    l1 = tr / 2 + disc
    l2 = tr / 2 - disc
    return l1 if abs(l1 - d) < abs(l2 - d) else l2


def eigenvalues(M, max_sweeps=None) -> np.ndarray:
    """All eigenvalues of ``M`` with multiplicity.

    Reduces to Hessenberg form and runs single-shift complex QR with
    Wilkinson shifts, deflating from the bottom. An exceptional shift is
    used every tenth iteration on a stalled block.

    Raises
    ------
    ConvergenceError
        If the total number of QR sweeps exceeds ``100 * n``.
    """
    H = hessenberg(as_matrix(M))
    n = H.shape[0]
    if max_sweeps is None:
        max_sweeps = 100 * n
    eig = np.empty(n, dtype=complex)
    hi = n - 1
    sweeps = 0
    stall = 0
    while hi >= 0:
        if hi == 0:
            eig[0] = H[0, 0]
            break
        lo = hi
        while lo > 0:
            s = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if s == 0.0:
                s = np.abs(H).max()
            if abs(H[lo, lo - 1]) <= _EPS * s:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = H[hi, hi]
            hi -= 1
            stall = 0
            continue
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"shifted QR did not converge in {max_sweeps} sweeps")
        stall += 1
        if stall % 10 == 0:
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * (1 + 1j)
        else:
            mu = _wilkinson_shift(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        W = H[lo:hi + 1, lo:hi + 1]
        m = W.shape[0]
        W[np.diag_indices(m)] -= mu
        rots = []
        for k in range(m - 1):
            c, s = _givens(W[k, k], W[k + 1, k])
            G = np.array([[np.conj(c), np.conj(s)], [-s, c]])
            W[k:k + 2, k:] = G @ W[k:k + 2, k:]
            W[k + 1, k] = 0.0
            rots.append(G)
        for k, G in enumerate(rots):
            W[:k + 2, k:k + 2] = W[:k + 2, k:k + 2] @ G.conj().T
        W[np.diag_indices(m)] += mu
        sweeps += 1
    return eig


def spectral_separation(A, B) -> float:
    """Minimum distance between an eigenvalue of ``A`` and one of ``B``."""
    ea = eigenvalues(A)
    eb = eigenvalues(B)
    return float(np.abs(ea[:, None] - eb[None, :]).min())


def spectrum_distance(eigs_a, eigs_b) -> float:
    """Same as :func:`spectral_separation` for precomputed spectra."""
    ea = np.atleast_1d(np.asarray(eigs_a, dtype=complex))
    eb = np.atleast_1d(np.asarray(eigs_b, dtype=complex))
    return float(np.abs(ea[:, None] - eb[None, :]).min())


# ---------------------------------------------------------------------------
# rank, ranges, polar


def _rank_cutoff(s, cfg):
    smax = s[0] if s.size else 0.0
    return cfg.rank_tol * smax if smax > 0 else cfg.rank_tol


def numerical_rank(M, cfg: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_tol * sigma_max``."""
    s = np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > _rank_cutoff(s, cfg)))


def _truncated_svd(T, cfg):
    U, s, Wh = np.linalg.svd(np.asarray(T, dtype=complex))
    r = 0 if (s.size == 0 or s[0] == 0.0) else int(np.count_nonzero(s > _rank_cutoff(s, cfg)))
    return U, s, Wh, r


@dataclass(frozen=True, eq=False)
class Projection:
    """Orthogonal projection together with its rank.

    Build with :meth:`from_matrix` (validating) or :meth:`from_basis`;
    the latter remembers the isometry so compressions use its
    coordinates.
    """

    matrix: np.ndarray
    rank: int
    _basis: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_basis(cls, U) -> Projection:
        U = np.asarray(U, dtype=complex)
        return cls(U @ adjoint(U), U.shape[1], U)

    @classmethod
    def from_matrix(cls, P, cfg: ToleranceConfig = DEFAULT_TOL) -> Projection:
        P = as_matrix(P)
        tol = cfg.residual_tol * (1 + fro(P))
        if fro(P - adjoint(P)) > tol or fro(P @ P - P) > tol:
            raise PreconditionError("matrix is not an orthogonal projection")
        w = np.linalg.eigvalsh((P + adjoint(P)) / 2)
        return cls(P, int(np.count_nonzero(np.abs(w - 1) <= 0.5)))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def basis(self) -> np.ndarray:
        """Isometry (n x rank) whose range is the range of the projection."""
        if self._basis is not None:
            return self._basis
        w, V = np.linalg.eigh((self.matrix + adjoint(self.matrix)) / 2)
        return V[:, np.argsort(-w, kind="stable")[: self.rank]]

    def complement(self) -> Projection:
        return Projection(np.eye(self.n) - self.matrix, self.n - self.rank)

    def compress(self, T) -> np.ndarray:
        """Corner of ``T`` in the coordinates of :attr:`basis`."""
        U = self.basis
        return adjoint(U) @ np.asarray(T) @ U


@dataclass(frozen=True, eq=False)
class PartialIsometry:
    matrix: np.ndarray
    initial: Projection
    final: Projection

    @classmethod
    def from_matrix(cls, V, cfg: ToleranceConfig = DEFAULT_TOL) -> PartialIsometry:
        V = as_matrix(V, square=False)
        if fro(V @ adjoint(V) @ V - V) > cfg.residual_tol * (1 + fro(V)):
            raise PreconditionError("matrix is not a partial isometry")
        U, s, Wh, r = _truncated_svd(V, cfg)
        return cls(V, Projection.from_basis(adjoint(Wh[:r])), Projection.from_basis(U[:, :r]))


def range_projection(T, cfg: ToleranceConfig = DEFAULT_TOL) -> Projection:
    """Projection onto the span of the retained left singular vectors."""
    U, s, Wh, r = _truncated_svd(T, cfg)
    return Projection.from_basis(U[:, :r])


def polar_partial_isometry(T, cfg: ToleranceConfig = DEFAULT_TOL) -> PartialIsometry:
    """Partial isometry ``V`` of the polar decomposition ``T = V H``."""
    U, s, Wh, r = _truncated_svd(T, cfg)
    V = U[:, :r] @ Wh[:r]
    return PartialIsometry(V, Projection.from_basis(adjoint(Wh[:r])), Projection.from_basis(U[:, :r]))


def null_basis(M, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical kernel of ``M``."""
    U, s, Wh, r = _truncated_svd(M, cfg)
    return adjoint(Wh[r:])
