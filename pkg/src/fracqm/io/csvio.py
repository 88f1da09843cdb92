"""Plain CSV tables with shortest round-trip number formatting."""
from __future__ import annotations

import csv
from numbers import Integral
from pathlib import Path

__all__ = ["format_value", "emit_csv", "read_csv"]


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, Integral):
        return str(int(v))
    return repr(float(v))


def emit_csv(header, rows, path) -> Path:
    """Write ``rows`` under ``header`` with LF line endings.

    Floats use Python's shortest repr, so reading the file back with
    ``float`` reproduces every value exactly.
    """
    header = list(header)
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            row = list(row)
            if len(row) != len(header):
                raise ValueError(f"row has {len(row)} fields, header has {len(header)}")
            w.writerow(format_value(v) for v in row)
    return path


def read_csv(path) -> tuple[list[str], list[list[float]]]:
    with Path(path).open(newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        return header, [[float(v) for v in row] for row in r]
