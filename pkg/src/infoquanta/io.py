"""CSV and JSON formats for series, spectra, matrices and reports.

Every float goes out with 17 significant digits so doubles round-trip.
Complex matrices are nested lists of ``[re, im]`` pairs; plain reals are
accepted on input.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ValidationError

__all__ = [
    "fmt",
    "write_csv",
    "read_series_csv",
    "write_series_csv",
    "write_psd_csv",
    "write_json",
    "dumps",
    "encode_complex",
    "decode_complex",
    "CsvParseError",
]


class CsvParseError(ValidationError):
    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.line = line


def fmt(x) -> str:
    return format(float(x), ".17g")


def write_csv(path, header: str, columns) -> None:
    cols = [np.asarray(c) for c in columns]
    lines = [header]
    for row in zip(*cols):
        lines.append(",".join(fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_series_csv(path, series) -> None:
    write_csv(path, "t,value", [series.times, series.samples])


def write_psd_csv(path, psd) -> None:
    write_csv(path, "freq_hz,psd", [psd.frequencies, psd.densities])


def read_series_csv(path):
    """Parse a ``t,value`` file into a :class:`~infoquanta.signal.TimeSeries`.

    The sample rate comes from the time column, which must be uniform.
    Errors name the offending line.
    """
    from .signal import TimeSeries

    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines or lines[0].strip() != "t,value":
        raise CsvParseError(path, 1, "expected header 't,value'")
    t, x = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise CsvParseError(path, lineno, f"expected 2 fields, found {len(parts)}")
        try:
            tv, xv = float(parts[0]), float(parts[1])
        except ValueError:
            raise CsvParseError(path, lineno, f"non-numeric field in {line!r}") from None
        if not (math.isfinite(tv) and math.isfinite(xv)):
            raise CsvParseError(path, lineno, "non-finite value")
        t.append(tv)
        x.append(xv)
    if len(t) < 2:
        raise CsvParseError(path, len(lines), "need at least 2 samples")
    t = np.array(t)
    dt = np.diff(t)
    span = t[-1] - t[0]
    if span <= 0 or np.any(dt <= 0):
        bad = int(np.argmax(dt <= 0)) + 3 if np.any(dt <= 0) else 3
        raise CsvParseError(path, bad, "time column must be strictly increasing")
    off = np.abs(dt - dt[0]) > 1e-6 * dt[0]
    if np.any(off):
        raise CsvParseError(path, int(np.argmax(off)) + 3, "time column is not uniformly sampled")
    rate = (t.size - 1) / span
    if abs(rate - round(rate)) <= 1e-9 * rate:
        rate = float(round(rate))
    return TimeSeries(rate, np.array(x), float(t[0]))


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_default) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def encode_complex(matrix) -> list:
    m = np.asarray(matrix, dtype=complex)
    return np.stack([m.real, m.imag], axis=-1).tolist()


def decode_complex(data, ndim: int) -> np.ndarray:
    """Decode a rank-``ndim`` complex array from reals or ``[re, im]`` pairs.

    Pair encoding adds one trailing axis of length 2, so a real 2x2 matrix
    and a complex 2-vector are told apart by ``ndim``.
    """
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError("matrix entries must be numbers or [re, im] pairs") from None
    if arr.ndim == ndim:
        return arr.astype(complex)
    if arr.ndim == ndim + 1 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    raise ValidationError(f"expected a rank-{ndim} array of reals or [re, im] pairs, got shape {arr.shape}")
