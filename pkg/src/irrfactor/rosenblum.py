"""The Rosenblum (Sylvester) operator ``X -> A X - X B``.

Both the inhomogeneous solve and the homogeneous intertwiner space go
through the same vectorized ``pq x pq`` operator. Vectorization is
row-major, so ``vec(A X B) = kron(A, B.T) @ vec(X)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IllPosedError, NumericalError, PreconditionError
from .linalg import DEFAULT_TOL, ToleranceConfig, adjoint, as_matrix, fro, opnorm, spectral_separation


@dataclass(frozen=True, eq=False)
class SylvesterProblem:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A)
        B = as_matrix(self.B)
        C = as_matrix(self.C, square=False)
        if C.shape != (A.shape[0], B.shape[0]):
            raise PreconditionError(
                f"right-hand side has shape {C.shape}, expected {(A.shape[0], B.shape[0])}"
            )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)


def rosenblum_matrix(A, B) -> np.ndarray:
    """Matrix of ``X -> A X - X B`` acting on row-major ``vec(X)``."""
    p, q = A.shape[0], B.shape[0]
    return np.kron(A, np.eye(q)) - np.kron(np.eye(p), B.T)


def sylvester_solve(prob: SylvesterProblem, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Solve ``A X - X B = C`` for ``X``.

    Raises
    ------
    IllPosedError
        If the spectra of ``A`` and ``B`` are closer than ``cfg.sep_tol``.
    NumericalError
        If the dense solve fails or misses the residual bound.
    """
    A, B, C = prob.A, prob.B, prob.C
    sep = spectral_separation(A, B)
    if sep <= cfg.sep_tol:
        raise IllPosedError(f"spectral separation {sep:.3g} <= sep_tol {cfg.sep_tol:.3g}")
    L = rosenblum_matrix(A, B)
    try:
        x = np.linalg.solve(L, C.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(str(exc)) from exc
    X = x.reshape(C.shape)
    res = fro(A @ X - X @ B - C)
    if res > cfg.residual_tol * (1 + fro(C)):
        raise NumericalError(f"Sylvester residual {res:.3g} exceeds tolerance")
    return X


def intertwiner_space(A, B, cfg: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of ``{X : A X = X B}``.

    Singular values of the Rosenblum operator are compared with
    ``rank_tol * (||A|| + ||B||)``, an upper bound on its norm, so an
    operator that is pure roundoff (``A`` and ``B`` equal scalars, say)
    has the full space as kernel.
    """
    A = as_matrix(A)
    B = as_matrix(B)
    p, q = A.shape[0], B.shape[0]
    L = rosenblum_matrix(A, B)
    scale = opnorm(A) + opnorm(B)
    _, s, Wh = np.linalg.svd(L)
    rank = int(np.count_nonzero(s > cfg.rank_tol * scale)) if scale > 0 else 0
    N = adjoint(Wh[rank:])
    return [N[:, j].reshape(p, q) for j in range(N.shape[1])]
