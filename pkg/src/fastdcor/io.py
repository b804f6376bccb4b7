"""CSV ingestion and export used by the command-line tools.

Input files hold one observation per row with one column per dimension,
UTF-8 encoded, decimal points only.  A single leading header row is
detected automatically (any cell that does not parse as a number).  Floats
are written with ``repr`` so a written matrix re-reads to identical values.
"""

from __future__ import annotations

import csv
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError

__all__ = ["read_matrix", "format_csv", "write_csv"]


def read_matrix(path) -> np.ndarray:
    """Read a CSV file into an (n, d) float64 matrix."""
    with open(path, newline="", encoding="utf-8") as fh:
        raw = [
            (lineno, row)
            for lineno, row in enumerate(csv.reader(fh), start=1)
            if row and any(cell.strip() for cell in row)
        ]
    if not raw:
        raise ParseError(f"{path}: no data rows")

    def parse(lineno: int, row: list[str]) -> list[float]:
        try:
            return [float(cell) for cell in row]
        except ValueError:
            raise ParseError(f"{path}: line {lineno}: not a numeric row: {row!r}") from None

    start = 0
    try:
        [float(cell) for cell in raw[0][1]]
    except ValueError:
        start = 1
    if start == len(raw):
        raise ParseError(f"{path}: only a header row, no data")
    data = [parse(lineno, row) for lineno, row in raw[start:]]
    widths = {len(row) for row in data}
    if len(widths) != 1:
        raise ParseError(f"{path}: rows have inconsistent column counts {sorted(widths)}")
    return np.asarray(data, dtype=np.float64)


def format_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Render rows as CSV text; floats use repr for an exact round trip."""

    def cell(v) -> str:
        if isinstance(v, (float, np.floating)):
            return repr(float(v))
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_csv(header, rows))
