import json
import math

import numpy as np

from ncdeform.reports import to_csv, to_json


def test_floats_round_trip_with_17_digits():
    values = [0.1, 1 / 3, math.pi, 1e-300, 2.0, -0.0, 123456789.123]
    text = to_json({"v": values})
    assert json.loads(text)["v"] == values
    assert "0.10000000000000001" in text
    assert '"v": [\n' in text


def test_complex_and_numpy_values():
    data = json.loads(to_json({"c": 1 - 2j, "n": np.float64(0.5), "b": np.bool_(True), "i": np.int64(3)}))
    assert data == {"c": {"re": 1.0, "im": -2.0}, "n": 0.5, "b": True, "i": 3}


def test_non_finite_becomes_null():
    assert json.loads(to_json([math.inf, math.nan])) == [None, None]


def test_csv():
    text = to_csv(("eps", "l"), [(0.1, 1), (0.01, 2)])
    assert text.splitlines() == ["eps,l", "0.10000000000000001,1", "0.01,2"]
