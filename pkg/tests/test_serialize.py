import json

import pytest

from iterstbc.errors import OutputError
from iterstbc.serialize import BENCH_HEADER, emit, round_floats, to_csv, to_json
from iterstbc.sim import BenchRow


def test_round_floats():
    assert round_floats(0.1 + 0.2) == 0.3
    assert round_floats({"a": [1.0000000000001, 2], "b": "x"}) == {"a": [1.0, 2], "b": "x"}


def test_json_wraps_config():
    payload = json.loads(to_json({"value": 1.5}, config={"seed": 0}))
    assert payload == {"config": {"seed": 0}, "result": {"value": 1.5}}


def test_csv_config_line():
    rows = [BenchRow(trial=0, snr=10.0, nodes=12, correct=True)]
    text = to_csv(rows, BENCH_HEADER, config={"b": 1, "a": 2})
    lines = text.splitlines()
    assert lines[0] == '# config={"a": 2, "b": 1}'
    assert lines[1] == "trial,snr,nodes,correct"
    assert lines[2] == "0,10,12,True"


def test_emit_writes_file(tmp_path):
    path = tmp_path / "out.json"
    text = emit({"x": 1}, "json", path)
    assert path.read_text() == text


def test_emit_errors(tmp_path):
    with pytest.raises(OutputError):
        emit({"x": 1}, "json", tmp_path)
    with pytest.raises(OutputError):
        emit({"x": 1}, "yaml")
