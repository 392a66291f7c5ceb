"""MatrixFile: JSON text with ``rows``, ``cols`` and row-major ``data`` of
``[re, im]`` pairs. Machine dumps use 17 significant digits, which
round-trips every double exactly.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dumps(M) -> str:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise ValueError("only matrices can be written")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    rows, cols = M.shape
    pairs = ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in M.ravel())
    return f'{{"rows": {rows}, "cols": {cols}, "data": [{pairs}]}}'


def loads(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or not {"rows", "cols", "data"} <= doc.keys():
        raise ParseError('matrix file needs keys "rows", "cols" and "data"')
    rows, cols, data = doc["rows"], doc["cols"], doc["data"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise ParseError("rows and cols must be non-negative integers")
    if rows != cols:
        raise ParseError(f"matrix must be square, got {rows} x {cols}")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ParseError(f"data must hold rows*cols = {rows * cols} entries")
    out = np.empty(rows * cols, dtype=complex)
    for i, entry in enumerate(data):
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)):
            raise ParseError(f"entry {i} is not a [real, imaginary] pair")
        if not all(math.isfinite(v) for v in entry):
            raise ParseError(f"entry {i} is not finite")
        out[i] = complex(entry[0], entry[1])
    return out.reshape(rows, cols)


def read(path) -> np.ndarray:
    """Parse a matrix file; OSError propagates for I/O failures."""
    return loads(Path(path).read_text())


def write(path, M) -> None:
    Path(path).write_text(dumps(M) + "\n")
