"""Command-line interface.

Subcommands::

    irrfactor factor FILE      factor a matrix into irreducible factors
    irrfactor check FILE       decide irreducibility with both oracles
    irrfactor sylvester A B C  solve A X - X B = C
    irrfactor random N         sample a certified irreducible matrix

``FILE`` may be ``-`` for standard input. Reports are JSON on standard
output (or ``--out``); diagnostics go to standard error.

Exit codes:

=====  =========================================================
0      success (``check``: irreducible)
1      verification or construction failure (``check``: reducible)
2      malformed input or bad arguments
3      certification failure, indeterminate verdict, or spectra
       closer than ``--tol-sep`` (``sylvester``)
=====  =========================================================
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .commutant import burnside_span, commutant_dimension
from .errors import (
    ConstructionError,
    DegenerateError,
    IllPosedError,
    IndeterminateError,
    IrrFactorError,
    NumericalError,
    PreconditionError,
    SamplingError,
    SeparationError,
)
from .factorizer import CertificationError, factor, random_irreducible, verify
from .linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, fro, spectral_separation
from .matrixfile import FORMATS, MatrixFileError, dumps_json, dumps_matrix, matrix_to_obj, read_matrix
from .rosenblum import SylvesterProblem, sylvester_solve

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_UNCERTAIN = 3


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text!r}")
    return value


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    tol = common.add_argument_group("tolerances")
    tol.add_argument("--tol-rank", type=_positive_float, default=DEFAULT_TOL.rank_tol,
                     help="relative singular-value cutoff (default: %(default)g)")
    tol.add_argument("--tol-sep", type=_positive_float, default=DEFAULT_TOL.sep_tol,
                     help="minimum spectral separation (default: %(default)g)")
    tol.add_argument("--tol-residual", type=_positive_float, default=DEFAULT_TOL.residual_tol,
                     help="relative residual bound (default: %(default)g)")
    tol.add_argument("--tol-irr", type=_positive_float, default=DEFAULT_TOL.irr_tol,
                     help="irreducibility verdict margin (default: %(default)g)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")
    common.add_argument("--out", default=None, help="output path (default: standard output)")
    common.add_argument("--format", choices=FORMATS, default="json",
                        help="matrix file format (default: %(default)s)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="irrfactor",
        description="Factor square complex matrices into irreducible factors.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("factor", parents=[common], help="factor a matrix")
    p.add_argument("input", help="matrix file, or - for standard input")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("check", parents=[common], help="decide irreducibility")
    p.add_argument("input", help="matrix file, or - for standard input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sylvester", parents=[common], help="solve A X - X B = C")
    p.add_argument("a", help="square matrix A")
    p.add_argument("b", help="square matrix B")
    p.add_argument("c", help="right-hand side C (rows of A by rows of B)")
    p.set_defaults(func=cmd_sylvester)

    p = sub.add_parser("random", parents=[common], help="sample a certified irreducible matrix")
    p.add_argument("n", type=int, help="dimension (>= 1)")
    p.set_defaults(func=cmd_random)
    return parser


def _config(args) -> ToleranceConfig:
    return ToleranceConfig(
        rank_tol=args.tol_rank,
        sep_tol=args.tol_sep,
        residual_tol=args.tol_residual,
        irr_tol=args.tol_irr,
    )


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _diag(msg: str) -> None:
    print(f"irrfactor: {msg}", file=sys.stderr)


def _certificate_obj(cert) -> dict:
    return {
        "verdict": cert.verdict,
        "commutant_dimension": cert.commutant_dim,
        "singular_gap": cert.second_singular_gap,
        "burnside_dimension": cert.burnside_dim,
        "burnside_margin": cert.burnside_margin,
    }


def cmd_factor(args) -> int:
    cfg = _config(args)
    T = read_matrix(args.input, args.format)
    try:
        f = factor(T, cfg, seed=args.seed)
    except CertificationError as exc:
        _diag(f"certification failed: {exc}")
        return EXIT_UNCERTAIN
    except (ConstructionError, SeparationError, DegenerateError, NumericalError) as exc:
        _diag(f"construction failed: {exc}")
        return EXIT_FAIL
    report = verify(T, f, cfg)
    out = {
        "n": T.shape[0],
        "route": f.route,
        "residual": f.residual,
        "verified": report.ok,
        "factors": [matrix_to_obj(F) for F in f.factors],
        "certificates": [_certificate_obj(c) for c in f.certificates],
        "checks": [
            {"name": c.name, "passed": c.passed, "value": c.value, "threshold": c.threshold, "detail": c.detail}
            for c in report.checks
        ],
        "warnings": list(f.warnings) + [w for w in report.warnings if w not in f.warnings],
    }
    _emit(dumps_json(out) + "\n", args.out)
    for w in out["warnings"]:
        _diag(f"warning: {w}")
    if not report.ok:
        for c in report.failures():
            _diag(f"verification failed: {c.name} {c.detail}".rstrip())
        return EXIT_FAIL
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _config(args)
    T = read_matrix(args.input, args.format)
    n = T.shape[0]
    bdim, bmargin = burnside_span(T, cfg)
    reasons = []
    try:
        dim, gap = commutant_dimension(T, cfg)
    except IndeterminateError as exc:
        dim = gap = None
        reasons.append(str(exc))
    if bmargin < cfg.irr_tol:
        reasons.append(f"word span margin {bmargin:.3g} is below irr_tol {cfg.irr_tol:.1g}")
    c_ok = None if dim is None else dim == 1
    b_ok = bdim == n * n
    if c_ok is not None and c_ok != b_ok:
        reasons.append("the two oracles disagree")
    if reasons:
        verdict = "indeterminate"
    else:
        verdict = "irreducible" if c_ok else "reducible"
    out = {
        "n": n,
        "verdict": verdict,
        "commutant_verdict": c_ok,
        "burnside_verdict": b_ok,
        "commutant_dimension": dim,
        "singular_gap": gap,
        "burnside_dimension": bdim,
        "burnside_margin": bmargin,
    }
    _emit(dumps_json(out) + "\n", args.out)
    if reasons:
        for r in reasons:
            _diag(f"indeterminate: {r}")
        return EXIT_UNCERTAIN
    return EXIT_OK if c_ok else EXIT_FAIL


def cmd_sylvester(args) -> int:
    cfg = _config(args)
    A = read_matrix(args.a, args.format)
    B = read_matrix(args.b, args.format)
    C = read_matrix(args.c, args.format, square=False)
    try:
        prob = SylvesterProblem(A, B, C)
    except PreconditionError as exc:
        raise MatrixFileError(str(exc)) from None
    try:
        X = sylvester_solve(prob, cfg)
    except IllPosedError as exc:
        _diag(f"ill-posed: {exc}")
        return EXIT_UNCERTAIN
    except NumericalError as exc:
        _diag(f"solve failed: {exc}")
        return EXIT_FAIL
    _emit(dumps_matrix(X, args.format), args.out)
    residual = fro(A @ X - X @ B - C)
    _diag(f"residual {residual:.3e}, separation {spectral_separation(A, B):.3e}")
    return EXIT_OK


def cmd_random(args) -> int:
    if args.n < 1:
        _diag(f"n must be >= 1, got {args.n}")
        return EXIT_INPUT
    cfg = _config(args)
    try:
        G = random_irreducible(args.n, args.seed, cfg)
    except SamplingError as exc:
        _diag(str(exc))
        return EXIT_FAIL
    _emit(dumps_matrix(as_matrix(G), args.format), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _config(args)
    except ValueError as exc:
        _diag(str(exc))
        return EXIT_INPUT
    try:
        return args.func(args)
    except (MatrixFileError, PreconditionError) as exc:
        _diag(f"malformed input: {exc}")
        return EXIT_INPUT
    except IrrFactorError as exc:
        _diag(f"error: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
