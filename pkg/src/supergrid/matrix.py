"""Labeled matrices with explicit missing cells, CSV ingestion, and orderings.

Everything downstream (clustering, smoothing, layout, rendering) consumes the
types defined here. Matrices are immutable: operations return new objects.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

DEFAULT_NA_TOKENS = frozenset({"", "NA"})

PLOT_TYPES = ("scatter", "scatterline", "smooth", "bar", "line", "boxplot", "dendrogram")


@dataclass(frozen=True)
class MissingCell:
    """Coordinates of one absent value in a LabeledMatrix."""

    row: int
    col: int


@dataclass(frozen=True)
class LabeledMatrix:
    """Numeric R x C matrix with row/column names; NaN cells are missing.

    Invariants (checked on construction): name lengths match the value grid,
    both dimensions are at least 1, and every present value is finite.
    """

    values: np.ndarray
    row_names: tuple[str, ...]
    col_names: tuple[str, ...]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "row_names", tuple(self.row_names))
        object.__setattr__(self, "col_names", tuple(self.col_names))
        if values.ndim != 2:
            raise DataError(f"matrix values must be 2-dimensional, got shape {values.shape}")
        r, c = values.shape
        if r < 1 or c < 1:
            raise DataError(f"matrix must be at least 1x1, got {r}x{c}")
        if len(self.row_names) != r:
            raise DataError(f"expected {r} row names, got {len(self.row_names)}")
        if len(self.col_names) != c:
            raise DataError(f"expected {c} column names, got {len(self.col_names)}")
        if np.isinf(values).any():
            i, j = map(int, np.argwhere(np.isinf(values))[0])
            raise DataError(f"non-finite value at row {i}, column {j}")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]

    @property
    def missing_mask(self) -> np.ndarray:
        return np.isnan(self.values)

    def missing_cells(self) -> list[MissingCell]:
        return [MissingCell(int(i), int(j)) for i, j in np.argwhere(self.missing_mask)]

    def has_missing(self) -> bool:
        return bool(self.missing_mask.any())


@dataclass(frozen=True)
class Ordering:
    """A permutation of one axis. ``axis`` is "row" or "column"."""

    axis: str
    permutation: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.axis not in ("row", "column"):
            raise DataError(f"ordering axis must be 'row' or 'column', got {self.axis!r}")
        perm = tuple(int(i) for i in self.permutation)
        object.__setattr__(self, "permutation", perm)
        if sorted(perm) != list(range(len(perm))):
            raise DataError(f"{self.axis} ordering is not a permutation of 0..{len(perm) - 1}")

    def inverse(self) -> Ordering:
        inv = np.empty(len(self.permutation), dtype=int)
        inv[list(self.permutation)] = np.arange(len(self.permutation))
        return Ordering(self.axis, tuple(int(i) for i in inv))


@dataclass(frozen=True)
class AdjacentSeries:
    """One value per column (side="top") or per row (side="right").

    Values align by position with the matrix axis *after* ordering is
    applied. NaN entries are missing and are skipped by the glyph renderers.
    """

    side: str
    values: tuple[float, ...]
    plot_type: str = "scatter"
    axis_name: str = ""
    point_colors: tuple[str, ...] | None = None
    point_alpha: float = 1.0
    bar_colors: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.side not in ("top", "right"):
            raise DataError(f"series side must be 'top' or 'right', got {self.side!r}")
        if self.plot_type not in PLOT_TYPES:
            raise DataError(
                f"unknown plot type {self.plot_type!r}; expected one of {', '.join(PLOT_TYPES)}"
            )
        vals = tuple(float("nan") if v is None else float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not 0.0 <= self.point_alpha <= 1.0:
            raise DataError(f"point_alpha must lie in [0, 1], got {self.point_alpha}")
        for attr in ("point_colors", "bar_colors"):
            colors = getattr(self, attr)
            if colors is not None:
                object.__setattr__(self, attr, tuple(colors))


def _parse_cell(token: str, na_tokens: frozenset[str], row: int, col: int) -> float:
    text = token.strip()
    if text in na_tokens:
        return float("nan")
    try:
        return float(text)
    except ValueError:
        raise DataError(f"row {row}, column {col}: cannot parse {token!r} as a number") from None


def load_matrix(
    path: str | Path,
    *,
    header: bool = True,
    row_names: bool = True,
    na_tokens: Iterable[str] = DEFAULT_NA_TOKENS,
) -> LabeledMatrix:
    """Read a LabeledMatrix from CSV.

    ``header`` consumes the first row as column names and ``row_names`` the
    first column as row names; otherwise positional names ("r1".., "c1"..)
    are generated. Cells matching ``na_tokens`` become missing. Ragged rows
    and non-numeric cells raise DataError naming the offending location;
    duplicate row names are allowed but reported through ``warnings``.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"matrix file not found: {path}")
    na = frozenset(na_tokens)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows:
        raise DataError(f"{path}: file is empty")

    col_labels: list[str] | None = None
    if header:
        head = rows.pop(0)
        col_labels = [c.strip() for c in (head[1:] if row_names else head)]
        if not rows:
            raise DataError(f"{path}: no data rows below the header")

    width = len(rows[0])
    body: list[list[float]] = []
    names: list[str] = []
    for i, raw in enumerate(rows):
        # 1-based file row number, counting the header if present
        file_row = i + (2 if header else 1)
        if len(raw) != width:
            raise DataError(f"row {file_row}: expected {width} fields, got {len(raw)}")
        cells = raw
        if row_names:
            names.append(cells[0].strip())
            cells = cells[1:]
        body.append(
            [_parse_cell(tok, na, file_row, j + 1 + int(row_names)) for j, tok in enumerate(cells)]
        )

    n_cols = width - int(row_names)
    if n_cols < 1:
        raise DataError(f"{path}: no value columns")
    if not row_names:
        names = [f"r{i + 1}" for i in range(len(body))]
    if col_labels is None:
        col_labels = [f"c{j + 1}" for j in range(n_cols)]
    if len(col_labels) != n_cols:
        raise DataError(f"header: expected {n_cols} column names, got {len(col_labels)}")
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        warnings.warn(f"duplicate row names: {', '.join(dupes)}", stacklevel=2)

    return LabeledMatrix(np.array(body, dtype=float), tuple(names), tuple(col_labels))


def save_matrix(m: LabeledMatrix, path: str | Path, *, na_token: str = "NA") -> None:
    """Write CSV in the same shape load_matrix reads (round-trips exactly)."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([""] + list(m.col_names))
        for name, row in zip(m.row_names, m.values):
            writer.writerow([name] + [na_token if np.isnan(v) else repr(float(v)) for v in row])


def load_series(path: str | Path) -> tuple[tuple[str, ...], tuple[float, ...]]:
    """Read a two-column (name,value) CSV; empty/NA values become missing."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"series file not found: {path}")
    names: list[str] = []
    values: list[float] = []
    with path.open(newline="", encoding="utf-8") as fh:
        for i, raw in enumerate(csv.reader(fh)):
            if not raw:
                continue
            if len(raw) != 2:
                raise DataError(f"row {i + 1}: expected 2 fields, got {len(raw)}")
            names.append(raw[0].strip())
            values.append(_parse_cell(raw[1], DEFAULT_NA_TOKENS, i + 1, 2))
    if not names:
        raise DataError(f"{path}: file is empty")
    return tuple(names), tuple(values)


def save_series(names: Sequence[str], values: Sequence[float], path: str | Path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for name, v in zip(names, values):
            writer.writerow([name, "NA" if np.isnan(v) else repr(float(v))])


def transpose(m: LabeledMatrix) -> LabeledMatrix:
    return LabeledMatrix(m.values.T.copy(), m.col_names, m.row_names)


def order_by_row_mean(m: LabeledMatrix, direction: str = "asc") -> Ordering:
    """Permutation sorting rows by their mean over present values.

    Ties keep original index order (stable). A row with no present values is
    an error naming the row.
    """
    if direction not in ("asc", "desc"):
        raise DataError(f"direction must be 'asc' or 'desc', got {direction!r}")
    present = ~m.missing_mask
    counts = present.sum(axis=1)
    if (counts == 0).any():
        i = int(np.argmax(counts == 0))
        raise DataError(f"row {m.row_names[i]!r} (index {i}) has no present values")
    sums = np.where(present, m.values, 0.0).sum(axis=1)
    means = sums / counts
    key = means if direction == "asc" else -means
    perm = np.argsort(key, kind="stable")
    return Ordering("row", tuple(int(i) for i in perm))


def apply_ordering(
    m: LabeledMatrix, rows: Ordering | None = None, cols: Ordering | None = None
) -> LabeledMatrix:
    """Permute rows and/or columns; names and missing flags move with values."""
    values = m.values
    row_names = m.row_names
    col_names = m.col_names
    if rows is not None:
        if rows.axis != "row":
            raise DataError(f"expected a row ordering, got axis {rows.axis!r}")
        if len(rows.permutation) != m.n_rows:
            raise DataError(f"row ordering length {len(rows.permutation)} != {m.n_rows} rows")
        idx = list(rows.permutation)
        values = values[idx, :]
        row_names = tuple(row_names[i] for i in idx)
    if cols is not None:
        if cols.axis != "column":
            raise DataError(f"expected a column ordering, got axis {cols.axis!r}")
        if len(cols.permutation) != m.n_cols:
            raise DataError(f"column ordering length {len(cols.permutation)} != {m.n_cols} columns")
        idx = list(cols.permutation)
        values = values[:, idx]
        col_names = tuple(col_names[i] for i in idx)
    return LabeledMatrix(values.copy(), row_names, col_names)
