"""File formats: channel JSON, result CSV and the flat ``key = value`` config file."""

import csv
import json
import math

import numpy as np

from . import classical, quantum
from .errors import InvalidState

CSV_DIGITS = 12


def _complex_nested(a):
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _from_complex_nested(data):
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def classical_to_json(m):
    m = classical.as_stochastic(m)
    return {"type": "classical", "dim": int(m.shape[0]), "matrix": m.tolist()}


def dilation_to_json(sample):
    """JSON record for a :class:`~retrodict.samplers.SampledQubitChannel` or a bare dilation."""
    dil = getattr(sample, "dilation", sample)
    out = {"type": "dilation", "dim": int(dil.dim), "ancilla_dim": int(dil.ancilla_dim),
           "U": _complex_nested(dil.U), "beta": _complex_nested(dil.beta)}
    if hasattr(sample, "coords"):
        out["coords"] = [float(c) for c in sample.coords]
        out["cell"] = [int(c) for c in sample.cell]
    return out


def channel_from_json(data):
    """Stochastic matrix for ``classical`` records, Kraus array for ``dilation`` and ``kraus`` records."""
    kind = data.get("type")
    if kind == "classical":
        m = classical.as_stochastic(np.asarray(data["matrix"], dtype=float))
        if m.shape[0] != data.get("dim", m.shape[0]):
            raise InvalidState("declared dim does not match the matrix")
        return m
    if kind == "dilation":
        dil = quantum.Dilation(_from_complex_nested(data["U"]), _from_complex_nested(data["beta"]))
        return quantum.dilation_to_kraus(dil)
    if kind == "kraus":
        return quantum.as_kraus(_from_complex_nested(data["kraus"]))
    raise InvalidState(f"unknown channel type {kind!r}")


def load_channel(path):
    with open(path, encoding="utf-8") as fh:
        return channel_from_json(json.load(fh))


def save_json(obj, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def format_value(v):
    """CSV cell text: 12 significant digits for reals, ``nan``/``inf`` spelled out."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.{CSV_DIGITS}g}"
    return str(v)


def write_csv(rows, path, columns=None):
    """Write dict rows with a header, LF line endings."""
    rows = list(rows)
    columns = columns or (list(rows[0]) if rows else [])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(c, "")) for c in columns])


def read_csv(path):
    """Rows as dicts; numeric-looking cells become floats."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        parsed = {}
        for k, v in row.items():
            try:
                parsed[k] = float(v)
            except (TypeError, ValueError):
                parsed[k] = v
        out.append(parsed)
    return out


def write_rows(rows, path, fmt="csv", columns=None):
    if fmt == "csv":
        write_csv(rows, path, columns)
    elif fmt == "json":
        save_json([{k: _jsonable(v) for k, v in r.items()} for r in rows], path)
    else:
        raise ValueError(f"unknown output format {fmt!r}")


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def read_config(path):
    """Parse a flat config file.

    One ``key = value`` pair per line; ``#`` starts a comment; keys use the
    long flag names with dashes or underscores, e.g. ``samples = 500``.
    """
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out
