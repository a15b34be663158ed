"""CSV serialization of sampled fields and operator kernels.

Field files: header ``p,q,re,im``, one row per grid point in storage order
(p outer, q inner), floats written with 17 significant digits so that a
write/read round trip is bit-exact.  Operator kernels use ``q1,q2,re,im``
with the same layout.  Axes are reconstructed from the coordinate columns
and validated for uniformity.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .grid import Axis, PhaseGrid, SampledField
from .quantum import OperatorKernel, validate_density

__all__ = [
    "write_field_csv",
    "read_field_csv",
    "write_operator_csv",
    "read_operator_csv",
]

_FMT = "%.17g"


class CsvFormatError(ValueError):
    """Malformed field/operator CSV; message carries the 1-based line number."""


def _write(path, header, c1, c2, values):
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for a, b, v in zip(c1, c2, values):
            w.writerow((_FMT % a, _FMT % b, _FMT % v.real, _FMT % v.imag))


def write_field_csv(field: SampledField, path) -> None:
    P, Q = field.grid.meshes()
    _write(path, ("p", "q", "re", "im"), P.ravel(), Q.ravel(), field.values.ravel())


def write_operator_csv(kernel: OperatorKernel, path) -> None:
    Q1, Q2 = np.meshgrid(kernel.q1_axis.values, kernel.q2_axis.values, indexing="ij")
    _write(path, ("q1", "q2", "re", "im"), Q1.ravel(), Q2.ravel(), kernel.values.ravel())


def _read_rows(path, header):
    path = Path(path)
    rows = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file (line 1: expected header {','.join(header)})")
        if [c.strip() for c in first] != list(header):
            raise CsvFormatError(
                f"{path}: line 1: expected header {','.join(header)!r}, got {','.join(first)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise CsvFormatError(f"{path}: line {lineno}: expected 4 columns, got {len(row)}")
            try:
                rows.append(tuple(float(c) for c in row))
            except ValueError as exc:
                raise CsvFormatError(f"{path}: line {lineno}: {exc}") from None
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    return np.asarray(rows)


def _axes_from_columns(c1: np.ndarray, c2: np.ndarray, path) -> tuple[Axis, Axis]:
    # storage order: first coordinate outer, second inner
    n2 = 1
    while n2 < len(c2) and c2[n2] != c2[0]:
        n2 += 1
    if len(c1) % n2 != 0:
        raise CsvFormatError(f"{path}: row count {len(c1)} not a multiple of inner length {n2}")
    n1 = len(c1) // n2
    v1 = c1[::n2]
    v2 = c2[:n2]
    if n1 < 2 or n2 < 2:
        raise CsvFormatError(f"{path}: grid must be at least 2x2, got {n1}x{n2}")
    grid1 = np.repeat(v1, n2)
    grid2 = np.tile(v2, n1)
    if not (np.allclose(grid1, c1, rtol=0, atol=1e-12 * max(1, np.abs(v1).max()))
            and np.allclose(grid2, c2, rtol=0, atol=1e-12 * max(1, np.abs(v2).max()))):
        raise CsvFormatError(f"{path}: coordinates do not form a row-major tensor grid")

    def to_axis(v, name):
        steps = np.diff(v)
        if steps.min() <= 0 or (steps.max() - steps.min()) > 1e-9 * max(1.0, steps.max()):
            raise CsvFormatError(f"{path}: {name} coordinates are not uniformly increasing")
        return Axis(float(v[0]), float(v[-1]), len(v))

    return to_axis(v1, "outer"), to_axis(v2, "inner")


def read_field_csv(path) -> SampledField:
    data = _read_rows(path, ("p", "q", "re", "im"))
    ax_p, ax_q = _axes_from_columns(data[:, 0], data[:, 1], path)
    values = (data[:, 2] + 1j * data[:, 3]).reshape(ax_p.n, ax_q.n)
    return SampledField(PhaseGrid(ax_p, ax_q), values)


def read_operator_csv(path, density: bool = False, tol: float = 1e-8) -> OperatorKernel:
    """Load an operator kernel; with density=True also validate the
    Hermiticity/unit-trace invariants."""
    data = _read_rows(path, ("q1", "q2", "re", "im"))
    ax1, ax2 = _axes_from_columns(data[:, 0], data[:, 1], path)
    values = (data[:, 2] + 1j * data[:, 3]).reshape(ax1.n, ax2.n)
    kernel = OperatorKernel(ax1, ax2, values)
    if density:
        validate_density(kernel, tol)
    return kernel
