"""Within-cluster smoothing: collapse each row-cluster x column-cluster block
of the heatmap to a single summary value (median by default)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cluster import Membership
from .errors import DataError
from .matrix import LabeledMatrix

SMOOTH_STATS = ("median", "mean")


def identity_membership(n: int, names: tuple[str, ...] | None = None) -> Membership:
    """Each object its own cluster; smoothing with it reproduces the input."""
    return Membership(tuple(range(n)), n, label_names=names)


@dataclass(frozen=True)
class SmoothedMatrix:
    """k_r x k_c grid of block summaries; NaN marks an all-missing block."""

    block_values: np.ndarray
    row_membership: Membership
    col_membership: Membership
    source_dims: tuple[int, int]

    def __post_init__(self) -> None:
        blocks = np.asarray(self.block_values, dtype=float)
        blocks.setflags(write=False)
        object.__setattr__(self, "block_values", blocks)
        if blocks.shape != (self.row_membership.k, self.col_membership.k):
            raise DataError(
                f"block grid {blocks.shape} does not match cluster counts "
                f"({self.row_membership.k}, {self.col_membership.k})"
            )
        if self.row_membership.n != self.source_dims[0]:
            raise DataError("row membership length does not match source rows")
        if self.col_membership.n != self.source_dims[1]:
            raise DataError("column membership length does not match source columns")

    @property
    def n_rows(self) -> int:
        return self.block_values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.block_values.shape[1]

    @property
    def row_names(self) -> tuple[str, ...]:
        return _cluster_names(self.row_membership)

    @property
    def col_names(self) -> tuple[str, ...]:
        return _cluster_names(self.col_membership)


def _cluster_names(mem: Membership) -> tuple[str, ...]:
    if mem.label_names is not None:
        return mem.label_names
    return tuple(f"c{i + 1}" for i in range(mem.k))


def smooth_by_cluster(
    m: LabeledMatrix,
    row_mem: Membership,
    col_mem: Membership,
    stat: str = "median",
) -> SmoothedMatrix:
    """Summarize each cluster block over its present cells.

    Missing cells never poison a block; a block with no present cells at all
    stays missing (rendered with the na color, "NA" in CSV output).
    """
    if stat not in SMOOTH_STATS:
        raise DataError(f"unknown stat {stat!r}; expected one of {SMOOTH_STATS}")
    if row_mem.n != m.n_rows:
        raise DataError(f"row membership covers {row_mem.n} objects, matrix has {m.n_rows} rows")
    if col_mem.n != m.n_cols:
        raise DataError(
            f"column membership covers {col_mem.n} objects, matrix has {m.n_cols} columns"
        )
    reduce = np.nanmedian if stat == "median" else np.nanmean
    row_groups = [row_mem.members(r) for r in range(row_mem.k)]
    col_groups = [col_mem.members(c) for c in range(col_mem.k)]
    blocks = np.full((row_mem.k, col_mem.k), np.nan)
    for r, rows in enumerate(row_groups):
        sub = m.values[rows, :]
        for c, cols in enumerate(col_groups):
            cells = sub[:, cols]
            if not np.isnan(cells).all():
                blocks[r, c] = float(reduce(cells))
    return SmoothedMatrix(blocks, row_mem, col_mem, (m.n_rows, m.n_cols))


def expand_to_cells(sm: SmoothedMatrix) -> LabeledMatrix:
    """Broadcast block values back onto the original cell grid."""
    rows = np.asarray(sm.row_membership.labels)
    cols = np.asarray(sm.col_membership.labels)
    values = sm.block_values[np.ix_(rows, cols)]
    r, c = sm.source_dims
    return LabeledMatrix(
        values.copy(),
        tuple(f"r{i + 1}" for i in range(r)),
        tuple(f"c{j + 1}" for j in range(c)),
    )
