import io
import math

import pytest
from hypothesis import given, strategies as st

from qrlink.errors import ConfigurationError
from qrlink.sweep import SweepResult, base_metadata, canonical_hash

finite = st.floats(allow_nan=False, allow_infinity=False)


def _table(rows):
    return SweepResult(["x", "y"], rows, base_metadata({"a": 1}, seed=3))


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=20))
def test_csv_round_trip_exact(rows):
    t = _table([list(r) for r in rows])
    back = SweepResult.from_csv(io.StringIO(t.to_csv()))
    assert back.columns == t.columns and back.metadata == t.metadata
    assert back.rows == t.rows


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=20))
def test_json_round_trip_exact(rows):
    t = _table([list(r) for r in rows])
    back = SweepResult.from_json(io.StringIO(t.to_json()))
    assert back.rows == t.rows and back.metadata == t.metadata


def test_non_finite_values_survive(tmp_path):
    t = _table([[math.inf, 0.0], [1.0, -math.inf]])
    for name in ("t.csv", "t.json"):
        t.write(tmp_path / name)
        assert SweepResult.read(tmp_path / name).rows == t.rows


def test_csv_layout():
    text = _table([[1.0, 0.1]]).to_csv()
    lines = text.split("\n")
    assert lines[0].startswith("# ")
    assert "x,y" in lines and "1,0.10000000000000001" in lines
    assert "\r" not in text and text.endswith("\n")
    assert "0.1" in _table([[1.0, 0.1]]).to_csv(precision=6)


def test_metadata_contents():
    meta = base_metadata({"a": 1}, seed=None)
    assert meta["tool"] == "qrlink" and meta["seed"] == "none"
    assert meta["scenario_sha256"] == canonical_hash({"a": 1})
    assert canonical_hash({"a": 1, "b": 2}) == canonical_hash({"b": 2, "a": 1})
    assert "version" in meta


def test_shape_checks():
    with pytest.raises(ConfigurationError):
        SweepResult(["x", "y"], [[1.0]], {})
    with pytest.raises(ConfigurationError):
        SweepResult(["x", "x"], [[1.0, 2.0]], {})


def test_read_missing_file(tmp_path):
    with pytest.raises(OSError):
        SweepResult.read(tmp_path / "nope.csv")
