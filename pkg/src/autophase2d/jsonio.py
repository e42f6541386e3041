"""Deterministic JSON and CSV encoding plus input loaders.

Floats are always written with 17 significant digits so identical runs
produce identical bytes and values round-trip exactly.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .core import Autocorr1D, Autocorr2D, Matrix2D


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def dumps(obj) -> str:
    """Single-line JSON with deterministic float formatting."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, dict):
        if not all(isinstance(k, str) for k in obj):
            raise TypeError("JSON object keys must be strings")
        return "{" + ", ".join(f"{json.dumps(k)}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def census_csv(census) -> str:
    """CSV with columns index, d, log_gap; an undefined log gap is left empty."""
    lines = ["index,d,log_gap"]
    for i, value in enumerate(census.d):
        if i < len(census.v) and census.v[i] is not None:
            gap = format_float(census.v[i])
        else:
            gap = ""
        lines.append(f"{i},{format_float(float(value))},{gap}")
    return "\n".join(lines) + "\n"


def _require(mapping: dict, key: str, kind, context: str):
    if key not in mapping:
        raise ValueError(f"{context}: missing field {key!r}")
    value = mapping[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise ValueError(f"{context}: field {key!r} must be an integer")
    return value


def load_matrix2d(data: dict) -> Matrix2D:
    n = _require(data, "n", int, "matrix")
    rows = _require(data, "rows", list, "matrix")
    return Matrix2D(n, np.asarray(rows, dtype=float))


def load_autocorr2d(data: dict) -> Autocorr2D:
    n = _require(data, "n", int, "lag grid")
    values = _require(data, "values", list, "lag grid")
    return Autocorr2D(n, np.asarray(values, dtype=float))


def load_autocorr1d(data: dict) -> Autocorr1D:
    m = _require(data, "m", int, "lag sequence")
    values = np.asarray(_require(data, "values", list, "lag sequence"), dtype=float)
    if values.shape != (2 * m - 1,):
        raise ValueError(f"lag sequence: expected {2 * m - 1} values, got {values.size}")
    ref = float(np.max(np.abs(values))) if values.size else 0.0
    asym = float(np.max(np.abs(values - values[::-1])))
    if asym > 1e-8 * ref:
        raise ValueError(f"lag sequence: asymmetry {asym:.3e} exceeds tolerance")
    half = (values[m - 1:] + values[m - 1::-1]) / 2  # exact symmetry for the invariant
    return Autocorr1D.from_nonneg(half)
