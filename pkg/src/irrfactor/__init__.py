"""Irreducible factorization of square complex matrices.

Every ``n x n`` complex matrix is a product of two irreducible matrices
(three for the zero matrix in odd dimension ``n >= 3``). A matrix is
irreducible when only scalars commute with both it and its adjoint.
:func:`factor` builds such factors and certifies each one with two
independent oracles: the nullspace of the commutation system and the
span of words in the matrix and its adjoint.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .commutant import (
    BlockDecomposition,
    CommutantBasis,
    IrreducibilityCertificate,
    block_decomposition,
    burnside_dimension,
    burnside_irreducible,
    commutant_basis,
    commutant_dimension,
    find_nontrivial_projection,
    is_irreducible,
)
from .constructions import (
    FactorPair,
    Factorization,
    IrrInvPair,
    add_zero_even,
    add_zeros,
    build_triangular,
    closed_range_chain,
    closed_range_pair,
    half_exact,
    half_exceed,
    nonvanishing_partial_isometry,
    prop_key_factor,
    resolvent_split,
    zero_factor,
)
from .errors import (
    ConstructionError,
    ConvergenceError,
    DegenerateError,
    IllPosedError,
    IndeterminateError,
    IrrFactorError,
    NumericalError,
    PreconditionError,
    SamplingError,
    SeparationError,
)
from .factorizer import (
    ROUTES,
    CertificationError,
    VerificationReport,
    factor,
    random_irreducible,
    verify,
)
from .linalg import (
    DEFAULT_TOL,
    PartialIsometry,
    Projection,
    ToleranceConfig,
    eigenvalues,
    numerical_rank,
    polar_partial_isometry,
    range_projection,
    spectral_separation,
)
from .rosenblum import SylvesterProblem, intertwiner_space, rosenblum_matrix, sylvester_solve

__all__ = [
    "BlockDecomposition", "CommutantBasis", "IrreducibilityCertificate", "block_decomposition",
    "burnside_dimension", "burnside_irreducible", "commutant_basis", "commutant_dimension",
    "find_nontrivial_projection", "is_irreducible",
    "FactorPair", "Factorization", "IrrInvPair", "add_zero_even", "add_zeros", "build_triangular",
    "closed_range_chain", "closed_range_pair", "half_exact", "half_exceed",
    "nonvanishing_partial_isometry", "prop_key_factor", "resolvent_split", "zero_factor",
    "ConstructionError", "ConvergenceError", "DegenerateError", "IllPosedError", "IndeterminateError",
    "IrrFactorError", "NumericalError", "PreconditionError", "SamplingError", "SeparationError",
    "ROUTES", "CertificationError", "VerificationReport", "factor", "random_irreducible", "verify",
    "DEFAULT_TOL", "PartialIsometry", "Projection", "ToleranceConfig", "eigenvalues", "numerical_rank",
    "polar_partial_isometry", "range_projection", "spectral_separation",
    "SylvesterProblem", "intertwiner_space", "rosenblum_matrix", "sylvester_solve",
]
