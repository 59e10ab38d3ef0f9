# tests/test_output.py
import json
import math

import numpy as np
import pandas as pd

from polarcoulomb.models.params import Regime
from polarcoulomb.utils.output import emit_json, sanitize, to_csv, to_json


def test_sanitize_special_values():
    payload = {
        "nan": float("nan"),
        "inf": math.inf,
        "minus_inf": -np.inf,
        "complex": 1.5 - 2j,
        "regime": Regime.II,
        "array": np.array([1.0, np.nan]),
        "scalar": np.float64(0.25),
        "count": np.int64(3),
        "flag": np.bool_(True),
        1: (2, 3),
    }
    assert sanitize(payload) == {
        "nan": None,
        "inf": "inf",
        "minus_inf": "-inf",
        "complex": [1.5, -2.0],
        "regime": "II",
        "array": [1.0, None],
        "scalar": 0.25,
        "count": 3,
        "flag": True,
        "1": [2, 3],
    }


def test_json_is_strict_and_terminated():
    text = to_json({"x": float("nan"), "y": 0.1})
    assert text.endswith("}\n")
    assert json.loads(text) == {"x": None, "y": 0.1}
    assert "NaN" not in text


def test_csv_empty_cells_and_lf():
    frame = pd.DataFrame({"e": [0.5, 0.25], "residual": [np.nan, 1.0 / 3.0]})
    text = to_csv(frame)
    assert "\r" not in text
    assert text.splitlines() == ["e,residual", "0.5,", "0.25,0.33333333333333331"]


def test_emit_json_creates_parents(tmp_path):
    target = tmp_path / "nested" / "out.json"
    emit_json({"a": 1}, str(target))
    assert json.loads(target.read_text(encoding="utf-8")) == {"a": 1}
