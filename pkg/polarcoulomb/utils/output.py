# polarcoulomb/utils/output.py
"""
Ergebnis-Ausgabe: JSON für Einzelwerte, CSV für Kurven
Gleiche Eingaben ergeben byte-identische Ausgaben
"""

import json
import math
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd

from polarcoulomb.utils.constants import FLOAT_FORMAT, JSON_INDENT


def sanitize(value: Any) -> Any:
    """
    Wandelt Ergebnisse in JSON-taugliche Python-Typen

    NaN → None, ±inf → "inf"/"-inf", komplex → [re, im],
    numpy-Skalare/Arrays → float/int/list, Enum → value
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(v) for v in value]
    if isinstance(value, np.ndarray):
        return [sanitize(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [sanitize(float(value.real)), sanitize(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return value


def to_json(payload: Any) -> str:
    """float-repr ist die kürzeste rundungsstabile Darstellung (≤ 17 Stellen)"""
    return json.dumps(sanitize(payload), indent=JSON_INDENT, ensure_ascii=False, allow_nan=False) + "\n"


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n", na_rep="")


def emit(text: str, out: Optional[str] = None) -> None:
    """Schreibt nach stdout oder in die Datei --out"""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def emit_json(payload: Any, out: Optional[str] = None) -> None:
    emit(to_json(payload), out)


def emit_csv(frame: pd.DataFrame, out: Optional[str] = None) -> None:
    emit(to_csv(frame), out)
