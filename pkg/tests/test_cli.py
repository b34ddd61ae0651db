from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from irrfactor import cli
from irrfactor.factorizer import Check, VerificationReport
from irrfactor.matrixfile import dumps_json, dumps_matrix, loads_matrix, matrix_from_obj


@pytest.fixture
def write(tmp_path):
    def _write(M, name="m.json", fmt="json"):
        path = tmp_path / name
        path.write_text(dumps_matrix(np.asarray(M, dtype=complex), fmt))
        return str(path)
    return _write


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- factor ------------------------------------------------------------------

def test_factor_jordan(write, capsys):
    code, out, _ = run(capsys, "factor", write([[0, 1], [0, 0]]))
    assert code == 0
    report = json.loads(out)
    assert report["route"] == "resolvent" and report["verified"]
    X, Y = (matrix_from_obj(F) for F in report["factors"])
    assert_allclose(X @ Y, [[0, 1], [0, 0]], atol=1e-12)


def test_factor_odd_zero(write, capsys):
    code, out, _ = run(capsys, "factor", write(np.zeros((3, 3))))
    assert code == 0
    report = json.loads(out)
    assert len(report["factors"]) == 3 and report["route"] == "zero_parity"


def test_factor_truncated_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "entries": [[{"re": 1')
    code, out, err = run(capsys, "factor", path)
    assert code == 2 and out == "" and "malformed" in err


def test_factor_missing_file(tmp_path, capsys):
    assert run(capsys, "factor", tmp_path / "nope.json")[0] == 2


def test_factor_indeterminate(write, capsys):
    code, _, err = run(capsys, "factor", write([[1, 1e-8], [0, 2]]))
    assert code == 3 and "certification" in err


def test_factor_verification_failure(write, capsys, monkeypatch):
    failing = VerificationReport(False, [Check("residual", False, 1.0, 1e-8)])
    monkeypatch.setattr(cli, "verify", lambda T, f, cfg: failing)
    code, out, err = run(capsys, "factor", write([[0, 1], [0, 0]]))
    assert code == 1 and json.loads(out)["verified"] is False and "residual" in err


def test_factor_text_input_and_out_file(tmp_path, write, capsys):
    src = write(np.diag([1, 2, 0]), "m.txt", "text")
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "factor", src, "--format", "text", "--out", dest)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["verified"]


def test_factors_pass_check(tmp_path, write, capsys):
    T = np.diag([1.0, 2.0, 0.0, 0.0, 3.0])
    code, out, _ = run(capsys, "factor", write(T))
    assert code == 0
    for i, F in enumerate(json.loads(out)["factors"]):
        path = tmp_path / f"f{i}.json"
        path.write_text(dumps_json(F))
        assert run(capsys, "check", path)[0] == 0


# -- check -------------------------------------------------------------------

@pytest.mark.parametrize("M, code, dim", [
    ([[0, 1], [0, 0]], 0, 1),
    (np.diag([1, 2]), 1, 2),
    (np.eye(2), 1, 4),
])
def test_check_examples(M, code, dim, write, capsys):
    got, out, _ = run(capsys, "check", write(M))
    report = json.loads(out)
    assert got == code
    assert report["commutant_dimension"] == dim
    assert report["commutant_verdict"] == report["burnside_verdict"] == (code == 0)


def test_check_indeterminate(write, capsys):
    code, out, err = run(capsys, "check", write([[1, 1e-8], [0, 2]]))
    assert code == 3 and json.loads(out)["verdict"] == "indeterminate" and "indeterminate" in err


def test_check_tolerance_flags(write, capsys):
    # the same input becomes decidable once the band is moved below the coupling
    path = write([[1, 1e-8], [0, 2]])
    assert run(capsys, "check", path, "--tol-irr", "1e-9", "--tol-rank", "1e-10")[0] == 0
    assert run(capsys, "check", path, "--tol-rank", "1e-7", "--tol-irr", "1e-6")[0] == 1


def test_check_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO("0 1\n0 0\n"))
    assert run(capsys, "check", "-", "--format", "text")[0] == 0


# -- sylvester ---------------------------------------------------------------

def test_sylvester_scalar(write, capsys):
    code, out, err = run(capsys, "sylvester", write([[2]], "a.json"), write([[0]], "b.json"),
                         write([[1]], "c.json"))
    assert code == 0
    assert_allclose(loads_matrix(out), [[0.5]])
    assert "residual" in err


def test_sylvester_equal_spectra(write, capsys):
    a = write(np.diag([1, 2]), "a.json")
    assert run(capsys, "sylvester", a, a, write(np.eye(2), "c.json"))[0] == 3


def test_sylvester_diagonal(write, capsys):
    code, out, _ = run(capsys, "sylvester", write(np.diag([1, 2]), "a.json"), write([[3]], "b.json"),
                       write([[1], [1]], "c.json"))
    assert code == 0
    assert_allclose(loads_matrix(out, square=False), [[-0.5], [-1.0]])


def test_sylvester_shape_mismatch(write, capsys):
    code, _, _ = run(capsys, "sylvester", write(np.eye(2), "a.json"), write([[3]], "b.json"),
                     write([[1, 1]], "c.json"))
    assert code == 2


# -- random ------------------------------------------------------------------

def test_random_deterministic(capsys):
    _, first, _ = run(capsys, "random", 3, "--seed", 7)
    _, second, _ = run(capsys, "random", 3, "--seed", 7)
    assert first == second
    _, other, _ = run(capsys, "random", 3, "--seed", 8)
    assert other != first


def test_random_one(capsys):
    code, out, _ = run(capsys, "random", 1)
    assert code == 0 and loads_matrix(out).shape == (1, 1)


def test_random_passes_check(tmp_path, capsys):
    dest = tmp_path / "r.json"
    assert run(capsys, "random", 5, "--out", dest)[0] == 0
    assert run(capsys, "check", dest)[0] == 0


@pytest.mark.parametrize("argv", [["random", "0"], ["random", "abc"], ["random"], ["frobnicate"],
                                  ["check", "x", "--tol-rank", "-1"], ["check", "x", "--tol-rank", "2"]])
def test_bad_arguments(argv, capsys):
    assert cli.main(argv) == 2


# -- determinism end to end --------------------------------------------------

def test_console_script_byte_identical(write):
    path = write(np.diag([1.0, 2.0, 0.0]))
    cmd = [sys.executable, "-m", "irrfactor.cli", "factor", path, "--seed", "5"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["verified"]
