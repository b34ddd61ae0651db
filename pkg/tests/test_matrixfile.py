from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_array_equal

from irrfactor.matrixfile import (
    MatrixFileError,
    dumps_json,
    dumps_matrix,
    loads_matrix,
    matrix_from_obj,
    matrix_to_obj,
    read_matrix,
    write_matrix,
)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_json_round_trip_is_exact(rows, cols, data):
    vals = data.draw(st.lists(st.tuples(finite, finite), min_size=rows * cols, max_size=rows * cols))
    M = np.array([complex(a, b) for a, b in vals]).reshape(rows, cols)
    back = loads_matrix(dumps_matrix(M), square=False)
    assert_array_equal(back, M)
    # signed zeros survive too
    assert np.array_equal(np.signbit(back.real), np.signbit(M.real))


@given(st.integers(1, 4), st.data())
def test_text_round_trip_is_exact(n, data):
    vals = data.draw(st.lists(st.tuples(finite, finite), min_size=n * n, max_size=n * n))
    M = np.array([complex(a, b) for a, b in vals]).reshape(n, n)
    assert_array_equal(loads_matrix(dumps_matrix(M, "text"), "text"), M)


def test_json_layout():
    obj = json.loads(dumps_matrix(np.array([[1, 2j], [0.5, -1]])))
    assert obj == {"n": 2, "entries": [[{"re": 1, "im": 0}, {"re": 0, "im": 2}],
                                       [{"re": 0.5, "im": 0}, {"re": -1, "im": 0}]]}
    obj = json.loads(dumps_matrix(np.ones((2, 1))))
    assert obj["rows"] == 2 and obj["cols"] == 1 and "n" not in obj


def test_object_round_trip():
    M = np.array([[1 + 1j, 0], [3, -2j]])
    assert_array_equal(matrix_from_obj(matrix_to_obj(M)), M)


def test_text_parsing():
    text = "# a comment\n1 2i\n\n-3+4i 0.5-1e-3j\n"
    assert_array_equal(loads_matrix(text, "text"), [[1, 2j], [-3 + 4j, 0.5 - 1e-3j]])
    assert_array_equal(loads_matrix("i -i\n0 1", "text"), [[1j, -1j], [0, 1]])


@pytest.mark.parametrize("text", [
    '{"n": 2, "entries": [[{"re": 1',
    '{"n": 2, "entries": [[{"re": 1, "im": 0}]]}',
    '{"n": 0, "entries": []}',
    '{"n": 1.5, "entries": [[{"re": 1, "im": 0}]]}',
    '{"n": 1, "entries": [[{"re": "x", "im": 0}]]}',
    '{"n": 1, "entries": [[{"re": NaN, "im": 0}]]}',
    '{"n": 1, "entries": [[{"re": 1e999, "im": 0}]]}',
    '{"n": 1, "entries": [[[1, 0]]]}',
    '{"n": 1, "entries": [[{"re": 1, "im": 0, "x": 2}]]}',
    '{"rows": 1, "cols": 2, "entries": [[{"re": 1}, {"re": 2}]]}',
    '[1, 2]',
    '{"entries": []}',
])
def test_malformed_json(text):
    with pytest.raises(MatrixFileError):
        loads_matrix(text)


@pytest.mark.parametrize("text", ["", "1 2\n3", "1 x\n2 3", "1 2\n3 4\n5 6", "nan"])
def test_malformed_text(text):
    with pytest.raises(MatrixFileError):
        loads_matrix(text, "text")


def test_rectangular_allowed_on_request():
    text = '{"rows": 1, "cols": 2, "entries": [[{"re": 1, "im": 0}, {"re": 2, "im": 0}]]}'
    assert loads_matrix(text, square=False).shape == (1, 2)


def test_files(tmp_path):
    M = np.array([[1, 2], [3, 4j]])
    path = tmp_path / "m.json"
    write_matrix(M, str(path))
    assert_array_equal(read_matrix(str(path)), M)
    with pytest.raises(MatrixFileError):
        read_matrix(str(tmp_path / "missing.json"))


def test_dumps_json():
    text = dumps_json({"a": 1.0, "b": [1, 2], "c": {"x": None, "y": True}, "d": float("inf")})
    assert json.loads(text) == {"a": 1, "b": [1, 2], "c": {"x": None, "y": True}, "d": "inf"}
    assert dumps_json({"v": 0.1}) == '{\n  "v": 0.10000000000000001\n}'
