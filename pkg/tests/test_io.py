import json
import math

import numpy as np
import pytest
from hypothesis import given

from retrodict import io, quantum, samplers
from retrodict.errors import InvalidState

from strategies import gen, seeds, stochastic


def test_format_value():
    assert io.format_value(0.1) == "0.1"
    assert io.format_value(1 / 3) == "0.333333333333"
    assert io.format_value(np.float64(math.nan)) == "nan"
    assert io.format_value(-math.inf) == "-inf"
    assert io.format_value(np.int64(7)) == "7"
    assert io.format_value(True) == "true"
    assert io.format_value("spiral") == "spiral"


def test_csv_round_trip(tmp_path):
    rows = [{"index": 0, "family": "random", "Is": 0.25, "Id": math.nan},
            {"index": 1, "family": "spiral", "Is": 1 / 3, "Id": 2.0}]
    path = tmp_path / "rows.csv"
    io.write_csv(rows, path)
    text = path.read_bytes()
    assert text.startswith(b"index,family,Is,Id\n") and b"\r\n" not in text
    back = io.read_csv(path)
    assert back[1]["family"] == "spiral" and back[1]["Is"] == pytest.approx(1 / 3, rel=1e-11)
    assert math.isnan(back[0]["Id"])


def test_json_rows(tmp_path):
    path = tmp_path / "rows.json"
    io.write_rows([{"a": np.float64(math.inf), "b": np.int64(2)}], path, fmt="json")
    assert json.loads(path.read_text()) == [{"a": "inf", "b": 2}]
    with pytest.raises(ValueError):
        io.write_rows([], path, fmt="xml")


@given(seeds, stochastic(3))
def test_classical_channel_round_trip(seed, m):
    back = io.channel_from_json(json.loads(json.dumps(io.classical_to_json(m))))
    np.testing.assert_array_equal(back, m)


def test_dilation_round_trip(tmp_path):
    s = samplers.sample_qubit_gad_grid(samplers.grid_cells(4)[6], gen(0))
    path = tmp_path / "chan.json"
    io.save_json(io.dilation_to_json(s), path)
    record = json.loads(path.read_text())
    assert record["type"] == "dilation" and record["cell"] == list(s.cell)
    np.testing.assert_allclose(quantum.transfer_matrix(io.load_channel(path)),
                               quantum.transfer_matrix(s.kraus()), atol=1e-12)


def test_bad_channel_records():
    with pytest.raises(InvalidState):
        io.channel_from_json({"type": "lindblad"})
    with pytest.raises(InvalidState):
        io.channel_from_json({"type": "classical", "dim": 3, "matrix": [[1, 0], [0, 1]]})
    with pytest.raises(InvalidState):
        io.channel_from_json({"type": "classical", "matrix": [[0.5, 0], [0.6, 1]]})


def test_read_config(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("# budgets\nsamples = 500\nquantum-samples=20  # fewer\n\nseed = 7\n")
    assert io.read_config(path) == {"samples": "500", "quantum_samples": "20", "seed": "7"}
    path.write_text("samples 500\n")
    with pytest.raises(ValueError, match=":1:"):
        io.read_config(path)
