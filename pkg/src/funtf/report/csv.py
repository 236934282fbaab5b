"""
CSV export for paths and eigensteps tables.

FramePath CSV: one header row, then one row per sample with t,
funtf_residual, od_margin and the frame entries flattened column by column
(``f{n}_{i}`` for real frames, ``re_f{n}_{i}`` / ``im_f{n}_{i}`` for
complex ones). Eigensteps CSV: one row per n.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import TYPE_CHECKING

from funtf.schema import FieldTag

if TYPE_CHECKING:
    from funtf.eigensteps import EigenstepsTable
    from funtf.frames.path import FramePath


def path_header(path: FramePath) -> list[str]:
    """Column names of the FramePath CSV."""
    d, N = path.start.shape
    header = ["t", "funtf_residual", "od_margin"]
    for n in range(N):
        for i in range(d):
            if path.start.field_tag == FieldTag.REAL:
                header.append(f"f{n}_{i}")
            else:
                header.extend([f"re_f{n}_{i}", f"im_f{n}_{i}"])
    return header


def path_rows(path: FramePath) -> list[list[float]]:
    """Data rows of the FramePath CSV."""
    rows: list[list[float]] = []
    real = path.start.field_tag == FieldTag.REAL
    for t, residual, margin, frame in zip(
        path.times, path.funtf_residual, path.od_margin, path.frames, strict=True
    ):
        row = [float(t), float(residual), float(margin)]
        for value in frame.matrix.T.reshape(-1):
            if real:
                row.append(float(value.real))
            else:
                row.extend([float(value.real), float(value.imag)])
        rows.append(row)
    return rows


def write_path_csv(path: FramePath, destination: Path | str) -> Path:
    """Write a FramePath CSV and return its location."""
    destination = Path(destination)
    destination.parent.mkdir(parents=True, exist_ok=True)
    with destination.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(path_header(path))
        writer.writerows(path_rows(path))
    return destination


def write_eigensteps_csv(table: EigenstepsTable, destination: Path | str) -> Path:
    """Write an eigensteps table as CSV: n, lambda_1, ..., lambda_d."""
    destination = Path(destination)
    destination.parent.mkdir(parents=True, exist_ok=True)
    with destination.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n", *(f"lambda_{i + 1}" for i in range(table.d))])
        for n in range(table.N + 1):
            writer.writerow([n, *(float(value) for value in table.row(n))])
    return destination
