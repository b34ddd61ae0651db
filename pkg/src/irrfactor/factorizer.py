"""Factor any square complex matrix into irreducible factors.

Dispatch:

* ``T = 0``: :func:`~irrfactor.constructions.zero_factor`;
* ``T`` irreducible: :func:`~irrfactor.constructions.resolvent_split`;
* a reducing projection of rank ``n / 2`` exists:
  :func:`~irrfactor.constructions.half_exact`;
* otherwise the nonzero irreducible corners are split individually,
  chained into one pair with
  :func:`~irrfactor.constructions.closed_range_chain`, and the zero
  corners absorbed with :func:`~irrfactor.constructions.add_zeros`.

The input is scaled to unit operator norm before factoring and the
scale is folded back into the left factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .commutant import block_decomposition, burnside_span, commutant_dimension, is_irreducible
from .constructions import (
    Factorization,
    IrrInvPair,
    add_zeros,
    closed_range_chain,
    ginibre,
    half_exact,
    prop_key_factor,
    resolvent_split,
    zero_factor,
)
from .errors import (
    ConstructionError,
    DegenerateError,
    IndeterminateError,
    IrrFactorError,
    SamplingError,
    SeparationError,
)
from .linalg import DEFAULT_TOL, Projection, ToleranceConfig, adjoint, as_matrix, fro, opnorm

ROUTES = ("resolvent", "half_exact", "half_exceed", "chain+add_zeros", "prop_key", "zero_parity")


class CertificationError(IrrFactorError):
    """The input's irreducibility could not be decided."""


@dataclass
class Check:
    name: str
    passed: bool
    value: float | None = None
    threshold: float | None = None
    detail: str = ""


@dataclass
class VerificationReport:
    ok: bool
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


def _balanced_subset(dims):
    """Indices of blocks whose dimensions sum to ``sum(dims) / 2``, or None."""
    total = sum(dims)
    if total % 2:
        return None
    half = total // 2
    reach = {0: []}
    for i, d in enumerate(dims):
        for s, idx in list(reach.items()):
            t = s + d
            if t <= half and t not in reach:
                reach[t] = idx + [i]
    return reach.get(half)


def _product(factors):
    out = factors[0]
    for F in factors[1:]:
        out = out @ F
    return out


def _near_warnings(certs, cfg):
    return [
        f"factor {i} is near-reducible (commutant gap {c.second_singular_gap:.3g})"
        for i, c in enumerate(certs)
        if c.second_singular_gap < 10 * cfg.irr_tol
    ]


def _corner_pair(C, cfg):
    """Irreducible/invertible split of a corner, independent of its scale.

    The split is taken of ``C / ||C||`` and the norm is moved into the
    invertible factor, so small corners are not swamped by the shift.
    """
    s = opnorm(C)
    p = resolvent_split(C / s, cfg)
    return IrrInvPair(p.a, p.b * s)


def _chain_route(Tc, corners, dims, cfg, rng):
    """Factor a block-diagonal ``Tc`` via the closed-range chain."""
    nonzero, zeros = [], []
    for j, C in enumerate(corners):
        (nonzero if opnorm(C) > cfg.rank_tol else zeros).append(j)
    # descending corner dimension, stable
    nonzero.sort(key=lambda j: -dims[j])
    pairs = [_corner_pair(corners[j], cfg) for j in nonzero]
    pair = closed_range_chain(pairs, cfg)
    fp = add_zeros(pair, len(zeros), cfg, rng)
    route = "half_exceed" if len(pairs) == 1 and len(zeros) == 1 else "chain+add_zeros"
    return nonzero + zeros, fp.left, fp.right, route


def _prop_key_route(corners, dims, cfg, rng):
    """Fallback for blocks without zero corners."""
    order = sorted(range(len(corners)), key=lambda j: dims[j])
    # smallest block first, then the next smallest; the rest in order
    pairs = []
    for pos, j in enumerate(order):
        p = _corner_pair(corners[j], cfg)
        if pos == 1:
            p = IrrInvPair(p.b, p.a)  # X and Y commute: invertible factor on the left
        pairs.append(p)
    fp = prop_key_factor(pairs, cfg, rng)
    return order, fp.left, fp.right


def factor(T, cfg: ToleranceConfig = DEFAULT_TOL, seed: int = 0) -> Factorization:
    """Factor ``T`` into two irreducible matrices (three for odd zero).

    Raises
    ------
    CertificationError
        If the irreducibility of ``T`` or of a corner is indeterminate.
    ConstructionError
        If the assembled factors fail the final verification.
    """
    T = as_matrix(T)
    n = T.shape[0]
    rng = np.random.default_rng(seed)
    scale = opnorm(T)
    if scale == 0.0:
        return _finish(T, zero_factor(n, cfg, rng), cfg)
    Tn = T / scale
    try:
        cert = is_irreducible(Tn, cfg)
        if cert.verdict:
            pair = resolvent_split(Tn, cfg)
            f = Factorization([pair.a, pair.b], 0.0, [], "resolvent")
            return _finish(T, f, cfg, scale)
        bd = block_decomposition(Tn, cfg, rng)
    except IndeterminateError as exc:
        raise CertificationError(str(exc)) from exc
    dims = bd.dims
    subset = _balanced_subset(dims)
    if subset is not None:
        U = np.hstack([bd.embeddings[j].matrix for j in subset])
        P = Projection.from_basis(U)
        fp = half_exact(Tn, P, cfg, rng)
        f = Factorization([fp.left, fp.right], 0.0, [], "half_exact")
        return _finish(T, f, cfg, scale)
    try:
        order, X, Y, route = _chain_route(Tn, bd.corners, dims, cfg, rng)
    except (ConstructionError, SeparationError) as exc:
        if any(opnorm(C) <= cfg.rank_tol for C in bd.corners):
            raise ConstructionError(str(exc), route="chain+add_zeros") from exc
        order, X, Y = _prop_key_route(bd.corners, dims, cfg, rng)
        route = "prop_key"
    W = np.hstack([bd.embeddings[j].matrix for j in order])
    f = Factorization([W @ X @ adjoint(W), W @ Y @ adjoint(W)], 0.0, [], route)
    return _finish(T, f, cfg, scale)


def _finish(T, f, cfg, scale=1.0):
    factors = list(f.factors)
    factors[0] = factors[0] * scale
    residual = fro(_product(factors) - T)
    if residual > cfg.residual_tol * (1 + fro(T)):
        raise ConstructionError(f"{f.route}: product residual {residual:.3g} too large", route=f.route)
    certs = []
    for i, F in enumerate(factors):
        try:
            cert = is_irreducible(F, cfg)
        except IndeterminateError as exc:
            raise ConstructionError(f"{f.route}: factor {i}: {exc}", route=f.route) from exc
        if not cert.verdict:
            raise ConstructionError(f"{f.route}: factor {i} is reducible", route=f.route)
        certs.append(cert)
    return Factorization(factors, residual, certs, f.route, _near_warnings(certs, cfg))


def verify(T, f: Factorization, cfg: ToleranceConfig = DEFAULT_TOL) -> VerificationReport:
    """Re-check a factorization from scratch with both oracles."""
    T = as_matrix(T)
    n = T.shape[0]
    checks = []
    warnings = []
    factors = [as_matrix(F) for F in f.factors]
    shapes_ok = all(F.shape == T.shape for F in factors)
    checks.append(Check("shapes", shapes_ok, detail=f"{len(factors)} factors"))
    if not shapes_ok:
        return VerificationReport(False, checks)
    bound = cfg.residual_tol * (1 + fro(T))
    res = fro(_product(factors) - T)
    checks.append(Check("residual", res <= bound, res, bound))
    expected = 3 if (not np.any(T) and n % 2 == 1 and n >= 3) else 2
    checks.append(Check("factor_count", len(factors) == expected, len(factors), expected))
    for i, F in enumerate(factors):
        try:
            dim, gap = commutant_dimension(F, cfg)
            checks.append(Check(f"factor{i}.commutant", dim == 1, gap, cfg.irr_tol,
                                f"commutant dimension {dim}"))
            if dim == 1 and gap < 10 * cfg.irr_tol:
                warnings.append(f"factor {i} is near-reducible (gap {gap:.3g})")
        except IndeterminateError as exc:
            checks.append(Check(f"factor{i}.commutant", False, detail=f"indeterminate: {exc}"))
        bdim, bmargin = burnside_span(F, cfg)
        checks.append(Check(f"factor{i}.burnside", bdim == n * n and bmargin >= cfg.irr_tol,
                            bmargin, cfg.irr_tol, f"word span dimension {bdim} of {n * n}"))
    return VerificationReport(all(c.passed for c in checks), checks, warnings)


def random_irreducible(n: int, seed: int = 0, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Ginibre sample, resampled until certified irreducible."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(10):
        G = ginibre(n, rng)
        try:
            if is_irreducible(G, cfg).verdict:
                return G
        except IndeterminateError:
            pass
    raise SamplingError("10 consecutive Ginibre samples failed certification")
