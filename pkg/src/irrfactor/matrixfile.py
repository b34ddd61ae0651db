"""Reading and writing matrix files.

Two formats are supported:

``json``
    ``{"n": k, "entries": [[{"re": .., "im": ..}, ..], ..]}`` with the rows
    in order. A rectangular matrix uses ``"rows"`` and ``"cols"`` in place
    of ``"n"``.
``text``
    One row per line, entries separated by whitespace, each entry a
    Python-style complex literal with ``i`` or ``j`` as the imaginary
    unit (``1``, ``-2.5i``, ``3+4i``). Blank lines and lines starting
    with ``#`` are ignored.

Numbers are written with 17 significant digits so a write/read round
trip is exact.
"""

from __future__ import annotations

import json
import math
import sys

import numpy as np

from .errors import IrrFactorError

FORMATS = ("json", "text")


class MatrixFileError(IrrFactorError, ValueError):
    """Malformed or unreadable matrix file."""


def format_float(x: float) -> str:
    """Shortest-safe decimal for a finite float (17 significant digits)."""
    x = float(x)
    if not math.isfinite(x):
        raise MatrixFileError(f"non-finite value {x!r}")
    text = format(x, ".17g")
    # keep a float marker so "-0" is not read back as the integer 0
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def _scalar(v) -> bool:
    return not isinstance(v, (dict, list, tuple))


def dumps_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON text with floats at 17 significant digits.

    Handles dicts (keys kept in insertion order), lists, tuples, str,
    bool, None, int and float; containers holding only scalars (or short
    lists of flat objects) are written on one line; ``inf`` is written as the string
    ``"inf"`` since JSON has no infinity.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if _level > 0 and all(_scalar(v) for v in obj.values()):
            return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps_json(v)}" for k, v in obj.items()) + "}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(_scalar(v) or (isinstance(v, dict) and all(_scalar(x) for x in v.values())) for v in obj):
            inline = "[" + ", ".join(dumps_json(v, indent, _level + 1) for v in obj) + "]"
            if all(_scalar(v) for v in obj) or len(inline) <= 100:
                return inline
        items = [pad + dumps_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if math.isinf(obj):
            return json.dumps("inf" if obj > 0 else "-inf")
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_to_obj(M) -> dict:
    """The JSON object for ``M`` (see module docstring)."""
    M = np.asarray(M, dtype=complex)
    rows, cols = M.shape
    head = {"n": rows} if rows == cols else {"rows": rows, "cols": cols}
    head["entries"] = [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in M]
    return head


def _entry_line(row) -> str:
    return "[" + ", ".join(
        '{"re": ' + format_float(z.real) + ', "im": ' + format_float(z.imag) + "}" for z in row
    ) + "]"


def dumps_matrix(M, fmt: str = "json") -> str:
    """Serialize ``M``; one matrix row per line in both formats."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise MatrixFileError(f"expected a 2-D matrix, got shape {M.shape}")
    if fmt == "text":
        lines = []
        for row in M:
            lines.append(" ".join(
                f"{format_float(z.real)}{'-' if math.copysign(1.0, z.imag) < 0 else '+'}"
                f"{format_float(abs(z.imag))}i"
                for z in row
            ))
        return "\n".join(lines) + "\n"
    if fmt != "json":
        raise MatrixFileError(f"unknown format {fmt!r}")
    rows, cols = M.shape
    head = f'"n": {rows}' if rows == cols else f'"rows": {rows}, "cols": {cols}'
    body = ",\n    ".join(_entry_line(row) for row in M)
    return "{" + head + ', "entries": [\n    ' + body + "\n]}\n"


def _entry(e, where):
    if isinstance(e, dict):
        if set(e) - {"re", "im"} or "re" not in e:
            raise MatrixFileError(f"{where}: entry must be an object with keys 're' and 'im'")
        re, im = e["re"], e.get("im", 0.0)
    else:
        raise MatrixFileError(f"{where}: entry must be an object with keys 're' and 'im'")
    for v in (re, im):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise MatrixFileError(f"{where}: non-numeric value {v!r}")
        if not math.isfinite(v):
            raise MatrixFileError(f"{where}: non-finite value")
    return complex(re, im)


def matrix_from_obj(obj, square: bool = True) -> np.ndarray:
    """Validate a decoded JSON object and return the matrix."""
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MatrixFileError("expected an object with 'entries'")
    if "n" in obj:
        rows = cols = obj["n"]
    elif "rows" in obj and "cols" in obj:
        rows, cols = obj["rows"], obj["cols"]
    else:
        raise MatrixFileError("expected 'n' (or 'rows' and 'cols')")
    for v in (rows, cols):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise MatrixFileError(f"dimension must be a positive integer, got {v!r}")
    if square and rows != cols:
        raise MatrixFileError(f"expected a square matrix, got {rows}x{cols}")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != rows:
        raise MatrixFileError(f"expected {rows} rows of entries")
    M = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(f"row {i}: expected {cols} entries")
        for j, e in enumerate(row):
            M[i, j] = _entry(e, f"entry ({i}, {j})")
    return M


def _parse_token(tok, where):
    t = tok.replace("i", "j").replace("I", "j")
    try:
        z = complex(t)
    except ValueError:
        raise MatrixFileError(f"{where}: cannot parse {tok!r} as a complex number") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MatrixFileError(f"{where}: non-finite value")
    return z


def parse_text(text: str, square: bool = True) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([_parse_token(tok, f"line {lineno}") for tok in line.split()])
    if not rows:
        raise MatrixFileError("no rows")
    cols = len(rows[0])
    if any(len(r) != cols for r in rows):
        raise MatrixFileError("rows have different lengths")
    if square and len(rows) != cols:
        raise MatrixFileError(f"expected a square matrix, got {len(rows)}x{cols}")
    return np.array(rows, dtype=complex)


def loads_matrix(text: str, fmt: str = "json", square: bool = True) -> np.ndarray:
    if fmt == "text":
        return parse_text(text, square)
    if fmt != "json":
        raise MatrixFileError(f"unknown format {fmt!r}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON: {exc}") from None
    return matrix_from_obj(obj, square)


def read_matrix(path: str, fmt: str = "json", square: bool = True) -> np.ndarray:
    """Read a matrix file; ``-`` reads standard input."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise MatrixFileError(f"{path} is not UTF-8 text") from None
    return loads_matrix(text, fmt, square)


def write_matrix(M, path: str | None = None, fmt: str = "json") -> str:
    """Write ``M`` to ``path`` (standard output when None or ``-``)."""
    text = dumps_matrix(M, fmt)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
