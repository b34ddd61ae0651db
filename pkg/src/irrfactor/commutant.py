"""Commutant of ``{T, T*}``, irreducibility oracles and block decomposition.

Two independent ways to decide irreducibility are provided:

* the commutant oracle, which counts the null directions of the linear
  map ``Q -> (QT - TQ, QT* - T*Q)``;
* the Burnside oracle, which grows the span of words in ``T`` and ``T*``
  until it saturates and compares its dimension with ``n**2``.

Both work on the traceless part of ``T`` scaled to unit Frobenius norm.
Neither the commutant nor the generated algebra changes under
``T -> a T + b I`` (``a != 0``), and the scaling makes every threshold
relative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndeterminateError
from .linalg import (
    DEFAULT_TOL,
    PartialIsometry,
    Projection,
    ToleranceConfig,
    adjoint,
    as_matrix,
    fro,
)


@dataclass(frozen=True, eq=False)
class CommutantBasis:
    dimension: int
    basis: list


@dataclass(frozen=True)
class IrreducibilityCertificate:
    """Verdict with the evidence of both oracles.

    ``second_singular_gap`` is the smallest retained singular value of
    the commutation system and ``burnside_margin`` the smallest singular
    value accepted while growing the word span.
    """

    verdict: bool
    commutant_dim: int
    second_singular_gap: float
    burnside_dim: int
    burnside_margin: float = math.inf


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    projections: list
    embeddings: list
    corners: list

    @property
    def dims(self) -> list[int]:
        return [c.shape[0] for c in self.corners]

    def reassemble(self) -> np.ndarray:
        n = self.projections[0].n
        out = np.zeros((n, n), dtype=complex)
        for V, C in zip(self.embeddings, self.corners):
            out += V.matrix @ C @ adjoint(V.matrix)
        return out


def _normalized(T, cfg, scale=0.0):
    """Traceless part of ``T`` at unit Frobenius norm, or None if scalar.

    ``scale`` is the norm of an enclosing matrix when ``T`` is one of its
    corners; a corner that is scalar up to roundoff of the whole is scalar.
    """
    n = T.shape[0]
    T0 = T - (np.trace(T) / n) * np.eye(n)
    nrm = fro(T0)
    if nrm == 0.0 or nrm <= cfg.rank_tol * max(fro(T), scale):
        return None
    return T0 / nrm


def commutation_matrix(T) -> np.ndarray:
    """Stacked ``2n^2 x n^2`` matrix of ``Q -> (QT - TQ, QT* - T*Q)``."""
    n = T.shape[0]
    eye = np.eye(n)
    Ts = adjoint(T)
    return np.vstack([
        np.kron(eye, T.T) - np.kron(T, eye),
        np.kron(eye, Ts.T) - np.kron(Ts, eye),
    ])


def _commutant_spectrum(T, cfg, scale=0.0):
    """Ascending singular values of the normalized commutation system."""
    n = T.shape[0]
    That = _normalized(T, cfg, scale)
    if That is None:
        return np.zeros(n * n), None
    s = np.linalg.svd(commutation_matrix(That), compute_uv=False)
    return s[::-1], That


def _classify(s, cfg):
    """(null count, smallest retained value) with the indeterminate check."""
    dim = int(np.count_nonzero(s <= cfg.rank_tol))
    gap = float(s[dim]) if dim < s.size else math.inf
    if dim < s.size and gap < cfg.irr_tol:
        raise IndeterminateError(
            f"commutant spectrum has a value {gap:.3g} between rank_tol "
            f"{cfg.rank_tol:.1g} and irr_tol {cfg.irr_tol:.1g}"
        )
    return dim, gap


def commutant_basis(T, cfg: ToleranceConfig = DEFAULT_TOL, scale: float = 0.0) -> CommutantBasis:
    """Orthonormal basis of the matrices commuting with ``T`` and ``T*``."""
    T = as_matrix(T)
    n = T.shape[0]
    That = _normalized(T, cfg, scale)
    if That is None:
        basis = []
        for i in range(n):
            for j in range(n):
                E = np.zeros((n, n), dtype=complex)
                E[i, j] = 1.0
                basis.append(E)
        return CommutantBasis(n * n, basis)
    _, s, Vh = np.linalg.svd(commutation_matrix(That))
    dim = int(np.count_nonzero(s <= cfg.rank_tol))
    # identity is always in the kernel; the count is at least one
    dim = max(dim, 1)
    null = Vh[-dim:].conj()
    return CommutantBasis(dim, [row.reshape(n, n) for row in null])


def commutant_dimension(T, cfg: ToleranceConfig = DEFAULT_TOL, scale: float = 0.0) -> tuple[int, float]:
    """Commutant dimension and the smallest retained singular value.

    ``scale`` optionally gives the norm of an enclosing matrix, so that a
    corner which is scalar up to that matrix's roundoff counts as scalar.

    Raises
    ------
    IndeterminateError
        If some singular value lies in ``(rank_tol, irr_tol)``.
    """
    T = as_matrix(T)
    if T.shape[0] == 1:
        return 1, math.inf
    s, _ = _commutant_spectrum(T, cfg, scale)
    return _classify(s, cfg)


def _spectral_unitary(H, cfg):
    """Unitary with the same spectral projections as the Hermitian ``H``.

    ``H`` is a Hermitian part of a matrix normalized to unit Frobenius
    norm. Eigenvalues are grouped into clusters (consecutive gaps at or
    below ``rank_tol`` join a cluster) and cluster ``j`` of ``k`` is sent
    to ``exp(2 pi i j / k)``. The result is a polynomial in ``H`` and ``H``
    is a polynomial in it, so both generate the same algebra, but the
    unitary has no small eigenvalue differences to lose in roundoff.
    """
    w, V = np.linalg.eigh(H)
    labels = np.concatenate([[0], np.cumsum(np.diff(w) > cfg.rank_tol)])
    k = int(labels[-1]) + 1
    return (V * np.exp(2j * np.pi * labels / k)) @ adjoint(V)


def burnside_span(T, cfg: ToleranceConfig = DEFAULT_TOL) -> tuple[int, float]:
    """Dimension of the unital algebra generated by ``T`` and ``T*``.

    The algebra is generated equally by the two Hermitian parts of ``T``;
    each is replaced by a spectrally equivalent unitary (see
    :func:`_spectral_unitary`) so that words never shrink. The span is
    grown level by level: each level multiplies the newly added
    orthonormal directions by the generators and their adjoints on the
    left, removes the part already spanned and keeps the singular
    directions of the remainder above ``rank_tol``. Word length is capped
    at ``2 n^2``.

    Returns
    -------
    dim : int
        Dimension of the span.
    margin : float
        Smallest singular value accepted as a new direction (``inf`` if
        the span never grew past the identity).
    """
    T = as_matrix(T)
    n = T.shape[0]
    That = _normalized(T, cfg)
    if That is None:
        return 1, math.inf
    gens = []
    for H in ((That + adjoint(That)) / 2, (That - adjoint(That)) / 2j):
        U = _spectral_unitary(H, cfg)
        gens += [U, adjoint(U)]
    basis = (np.eye(n) / math.sqrt(n)).reshape(1, -1).astype(complex)
    frontier = basis
    margin = math.inf
    for _ in range(2 * n * n):
        cands = np.vstack([
            (g @ F.reshape(n, n)).reshape(1, -1) for F in frontier for g in gens
        ])
        for _ in range(2):
            cands = cands - (cands @ basis.conj().T) @ basis
        _, s, Vh = np.linalg.svd(cands, full_matrices=False)
        keep = s > cfg.rank_tol
        if not keep.any():
            break
        margin = min(margin, float(s[keep].min()))
        # re-orthogonalize the new directions against the span once more
        new = Vh[keep]
        new = new - (new @ basis.conj().T) @ basis
        q, _ = np.linalg.qr(new.T)
        new = q.T
        basis = np.vstack([basis, new])
        frontier = new
        if basis.shape[0] >= n * n:
            break
    return int(basis.shape[0]), margin


def burnside_dimension(T, cfg: ToleranceConfig = DEFAULT_TOL) -> int:
    """Dimension of the unital algebra generated by ``T`` and ``T*``."""
    return burnside_span(T, cfg)[0]


def burnside_irreducible(T, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff words in ``T`` and ``T*`` span all of ``M_n``."""
    T = as_matrix(T)
    return burnside_dimension(T, cfg) == T.shape[0] ** 2


def is_irreducible(T, cfg: ToleranceConfig = DEFAULT_TOL) -> IrreducibilityCertificate:
    """Certify whether ``T`` has trivial commutant.

    The verdict comes from the commutant oracle; the Burnside dimension is
    recorded alongside it. Both oracles must be confident: a singular
    value in ``(rank_tol, irr_tol)`` on either side, or a disagreement
    between them, marks the input as numerically borderline.

    Raises
    ------
    IndeterminateError
        If either oracle lands in the tolerance band, or they disagree.
    """
    T = as_matrix(T)
    n = T.shape[0]
    dim, gap = commutant_dimension(T, cfg)
    bdim, bmargin = burnside_span(T, cfg)
    if bmargin < cfg.irr_tol:
        raise IndeterminateError(
            f"word span grew along a direction of size {bmargin:.3g}, below irr_tol {cfg.irr_tol:.1g}"
        )
    verdict = dim == 1
    if verdict != (bdim == n * n):
        raise IndeterminateError(
            f"oracles disagree: commutant dimension {dim}, word span {bdim} of {n * n}"
        )
    return IrreducibilityCertificate(verdict, dim, gap, bdim, bmargin)


def _hermitian_split(C, cfg, rng, scale=0.0):
    """Split the range into two commutant-invariant pieces.

    Returns isometries ``(V_low, V_high)`` whose ranges are spectral
    subspaces of a random Hermitian element of the commutant, cut at the
    largest interior eigenvalue gap, or None when the commutant is
    trivial.
    """
    k = C.shape[0]
    if k == 1:
        return None
    dim, _ = commutant_dimension(C, cfg, scale)
    if dim == 1:
        return None
    basis = commutant_basis(C, cfg, scale).basis
    herm = []
    for Q in basis:
        herm.append((Q + adjoint(Q)) / 2)
        herm.append((1j * Q - 1j * adjoint(Q)) / 2)
    for _ in range(20):
        coef = rng.standard_normal(len(herm))
        H = sum(c * Q for c, Q in zip(coef, herm))
        H = (H + adjoint(H)) / 2
        w, V = np.linalg.eigh(H)
        gaps = np.diff(w)
        j = int(np.argmax(gaps))
        if gaps[j] > 1e-3 * max(w[-1] - w[0], fro(H) * 1e-12) and gaps[j] > 1e-8 * fro(H):
            return V[:, : j + 1], V[:, j + 1:]
    raise IndeterminateError("could not find a non-scalar element of a nontrivial commutant")


def find_nontrivial_projection(T, cfg: ToleranceConfig = DEFAULT_TOL, rng=None):
    """A projection other than 0 and I reducing ``T``, or None if irreducible."""
    T = as_matrix(T)
    rng = np.random.default_rng(rng)
    split = _hermitian_split(T, cfg, rng)
    if split is None:
        return None
    return Projection.from_basis(split[0])


def block_decomposition(T, cfg: ToleranceConfig = DEFAULT_TOL, rng=None) -> BlockDecomposition:
    """Split ``T`` into irreducible corners by recursive reduction.

    Each corner is the compression of ``T`` to the range of an isometry
    ``U_j``; the ranges are orthogonal, sum to the whole space, and
    ``T = sum_j U_j C_j U_j^*`` up to roundoff.
    """
    T = as_matrix(T)
    n = T.shape[0]
    rng = np.random.default_rng(rng)
    scale = fro(T)
    blocks = []
    stack = [np.eye(n, dtype=complex)]
    while stack:
        U = stack.pop()
        C = adjoint(U) @ T @ U
        split = _hermitian_split(C, cfg, rng, scale)
        if split is None:
            blocks.append((U, C))
            continue
        low, high = split
        # push high first so the low part is processed (and listed) first
        stack.append(U @ high)
        stack.append(U @ low)
    projections, embeddings, corners = [], [], []
    for U, C in blocks:
        P = Projection.from_basis(U)
        projections.append(P)
        embeddings.append(PartialIsometry(U, Projection.from_basis(np.eye(U.shape[1])), P))
        corners.append(C)
    return BlockDecomposition(projections, embeddings, corners)
