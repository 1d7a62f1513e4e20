"""Declarative figure description and its resolution to absolute pane geometry.

A FigureSpec says what the figure contains; compute_layout turns it plus the
matrix being drawn into non-overlapping pane rectangles with per-index pixel
intervals. Geometry is a pure function of (spec, matrix dims, label metrics):
text extents come from a built-in fixed-pitch metric table, never from system
fonts, so identical inputs give identical geometry on every machine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .cluster import Dendrogram, Membership
from .errors import DataError
from .matrix import AdjacentSeries, LabeledMatrix, Ordering
from .palettes import VIRIDIS
from .smoothing import SmoothedMatrix, _cluster_names

LABEL_MODES = ("variable", "cluster", "none")
ALIGNMENTS = ("left", "center", "right")

# Fixed-pitch advance widths (fraction of font size) for printable ASCII;
# anything else falls back to the same pitch.
ADVANCE_WIDTHS: dict[str, float] = {chr(c): 0.6 for c in range(32, 127)}
DEFAULT_ADVANCE = 0.6

PLOT_PANE_FRACTION = 0.30
DENDROGRAM_PANE_FRACTION = 0.15


def text_width(text: str, font_size: float) -> float:
    return font_size * sum(ADVANCE_WIDTHS.get(ch, DEFAULT_ADVANCE) for ch in text)


def rotated_extents(width: float, height: float, angle_deg: float) -> tuple[float, float]:
    """Bounding box of a width x height box rotated by angle_deg."""
    a = math.radians(angle_deg)
    return (
        abs(width * math.cos(a)) + abs(height * math.sin(a)),
        abs(width * math.sin(a)) + abs(height * math.cos(a)),
    )


@dataclass(frozen=True)
class FigureSpec:
    """Complete declarative description of one figure.

    Orderings are carried for the record; the matrix handed to compute_layout
    is expected to be ordered already.
    """

    palette: tuple[str, ...] = VIRIDIS
    palette_breaks: tuple[float, ...] | None = None
    na_color: str = "#FFFFFF"
    row_membership: Membership | None = None
    col_membership: Membership | None = None
    row_dendrogram: bool = False
    col_dendrogram: bool = False
    row_order: Ordering | None = None
    col_order: Ordering | None = None
    smooth_heat: bool = False
    top_panel: AdjacentSeries | None = None
    right_panel: AdjacentSeries | None = None
    left_label: str = "variable"
    bottom_label: str = "variable"
    left_label_colors: tuple[str, ...] | None = None
    bottom_label_colors: tuple[str, ...] | None = None
    left_label_alpha: float = 1.0
    bottom_label_alpha: float = 1.0
    left_label_angle: float = 0.0
    bottom_label_angle: float = 0.0
    left_label_alignment: str = "center"
    bottom_label_alignment: str = "center"
    grid_hline_color: str | None = None
    grid_vline_color: str | None = None
    row_title: str | None = None
    column_title: str | None = None
    legend: bool = False
    canvas_width: float = 800.0
    canvas_height: float = 600.0
    label_font_size: float = 11.0
    title_font_size: float = 14.0
    label_padding: float = 4.0
    smooth_span: float = 0.75
    dendrogram_color: str = "#555555"

    def __post_init__(self) -> None:
        object.__setattr__(self, "palette", tuple(self.palette))
        if len(self.palette) < 2:
            raise DataError(f"palette needs at least 2 colors, got {len(self.palette)}")
        if self.palette_breaks is not None:
            breaks = tuple(float(b) for b in self.palette_breaks)
            object.__setattr__(self, "palette_breaks", breaks)
            if len(breaks) != len(self.palette):
                raise DataError(
                    f"{len(breaks)} palette breaks for {len(self.palette)} palette colors"
                )
            if any(b2 <= b1 for b1, b2 in zip(breaks, breaks[1:])):
                raise DataError("palette breaks must be strictly ascending")
        for name in ("left_label", "bottom_label"):
            if getattr(self, name) not in LABEL_MODES:
                raise DataError(f"{name} must be one of {LABEL_MODES}")
        for name in ("left_label_alignment", "bottom_label_alignment"):
            if getattr(self, name) not in ALIGNMENTS:
                raise DataError(f"{name} must be one of {ALIGNMENTS}")
        for name in ("left_label_angle", "bottom_label_angle"):
            angle = float(getattr(self, name))
            if not 0.0 <= angle < 360.0:
                raise DataError(f"{name} must lie in [0, 360), got {angle}")
            object.__setattr__(self, name, angle)
        for name in ("left_label_alpha", "bottom_label_alpha"):
            alpha = float(getattr(self, name))
            if not 0.0 <= alpha <= 1.0:
                raise DataError(f"{name} must lie in [0, 1], got {alpha}")
        if self.canvas_width <= 0 or self.canvas_height <= 0:
            raise DataError("canvas dimensions must be positive")
        if not 0.0 < self.smooth_span <= 1.0:
            raise DataError(f"smooth_span must lie in (0, 1], got {self.smooth_span}")
        for name in ("left_label_colors", "bottom_label_colors"):
            colors = getattr(self, name)
            if colors is not None:
                object.__setattr__(self, name, tuple(colors))


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    def __post_init__(self) -> None:
        if self.w < 0 or self.h < 0:
            raise DataError(f"negative rectangle extent: {self.w} x {self.h}")

    @property
    def x1(self) -> float:
        return self.x + self.w

    @property
    def y1(self) -> float:
        return self.y + self.h


Interval = tuple[float, float]


@dataclass(frozen=True)
class Pane:
    """One placed pane plus its data-index pixel intervals, when it has any."""

    role: str
    rect: Rect
    x_intervals: tuple[Interval, ...] | None = None
    y_intervals: tuple[Interval, ...] | None = None


@dataclass(frozen=True)
class PanelLayout:
    panes: tuple[Pane, ...]
    canvas: tuple[float, float]

    def pane(self, role: str) -> Pane | None:
        for p in self.panes:
            if p.role == role:
                return p
        return None

    def require(self, role: str) -> Pane:
        p = self.pane(role)
        if p is None:
            raise DataError(f"layout has no {role} pane")
        return p


def axis_map(
    origin: float,
    extent: float,
    n: int,
    sizes: Sequence[int] | None = None,
) -> tuple[Interval, ...]:
    """Partition [origin, origin + extent] into n index intervals.

    Without ``sizes`` the intervals are equal; with sizes (smoothed mode) each
    interval's width is proportional to its cluster size. Consecutive
    intervals share their boundary value exactly.
    """
    if n < 1:
        raise DataError(f"axis needs at least 1 index, got {n}")
    if sizes is None:
        weights = [1] * n
    else:
        weights = [int(s) for s in sizes]
        if len(weights) != n or any(w <= 0 for w in weights):
            raise DataError("cluster sizes must be positive and match the index count")
    total = sum(weights)
    edges = [origin]
    acc = 0
    for w in weights:
        acc += w
        edges.append(origin + extent * (acc / total))
    edges[-1] = origin + extent
    return tuple((edges[i], edges[i + 1]) for i in range(n))


def cluster_spans(labels: Sequence[int]) -> tuple[tuple[int, int, int], ...]:
    """Contiguous runs of equal labels as (label, start, stop) with stop
    exclusive; a label split across runs is an error."""
    spans: list[tuple[int, int, int]] = []
    seen: set[int] = set()
    i = 0
    n = len(labels)
    while i < n:
        j = i
        while j < n and labels[j] == labels[i]:
            j += 1
        lab = int(labels[i])
        if lab in seen:
            raise DataError(f"cluster {lab} is not contiguous; group the axis by cluster first")
        seen.add(lab)
        spans.append((lab, i, j))
        i = j
    return tuple(spans)


def _axis_info(
    spec: FigureSpec, m: LabeledMatrix | SmoothedMatrix
) -> tuple[int, list[int] | None, int, list[int] | None]:
    """(row count, row sizes, col count, col sizes); sizes set in smoothed mode."""
    if isinstance(m, SmoothedMatrix):
        return (
            m.n_rows,
            list(m.row_membership.sizes),
            m.n_cols,
            list(m.col_membership.sizes),
        )
    return m.n_rows, None, m.n_cols, None


def _label_texts(
    spec: FigureSpec, m: LabeledMatrix | SmoothedMatrix, side: str
) -> tuple[str, ...]:
    """The texts a label pane must fit. Empty tuple when the pane is off."""
    mode = spec.left_label if side == "left" else spec.bottom_label
    if mode == "none":
        return ()
    if isinstance(m, SmoothedMatrix):
        # block axes are clusters; variable labels no longer exist
        return m.row_names if side == "left" else m.col_names
    if mode == "variable":
        return m.row_names if side == "left" else m.col_names
    mem = spec.row_membership if side == "left" else spec.col_membership
    if mem is None:
        raise DataError(f"{side} labels in cluster mode need a membership for that axis")
    return _cluster_names(mem)


def compute_layout(spec: FigureSpec, m: LabeledMatrix | SmoothedMatrix) -> PanelLayout:
    """Resolve a FigureSpec against a matrix into absolute pane geometry.

    Adjacent plot panes take 0.30 of the heatmap's height/width, dendrogram
    panes 0.15, label panes exactly fit their longest (rotated) label plus
    padding, omitted features take no space, and the heatmap receives the
    remainder of the canvas.
    """
    n_rows, row_sizes, n_cols, col_sizes = _axis_info(spec, m)
    _validate_spec_against(spec, m, n_rows, n_cols)

    pad = spec.label_padding
    font = spec.label_font_size

    left_texts = _label_texts(spec, m, "left")
    bottom_texts = _label_texts(spec, m, "bottom")
    left_w = 0.0
    if left_texts:
        widest = max(
            rotated_extents(text_width(t, font), font, spec.left_label_angle)[0]
            for t in left_texts
        )
        left_w = widest + 2 * pad
    bottom_h = 0.0
    if bottom_texts:
        tallest = max(
            rotated_extents(text_width(t, font), font, spec.bottom_label_angle)[1]
            for t in bottom_texts
        )
        bottom_h = tallest + 2 * pad

    row_title_w = spec.title_font_size + 2 * pad if spec.row_title else 0.0
    col_title_h = spec.title_font_size + 2 * pad if spec.column_title else 0.0
    legend_h = 3 * font + 2 * pad if spec.legend else 0.0

    top_frac = PLOT_PANE_FRACTION if spec.top_panel is not None else 0.0
    col_dend_frac = DENDROGRAM_PANE_FRACTION if spec.col_dendrogram else 0.0
    right_frac = PLOT_PANE_FRACTION if spec.right_panel is not None else 0.0
    row_dend_frac = DENDROGRAM_PANE_FRACTION if spec.row_dendrogram else 0.0

    heat_w = (spec.canvas_width - row_title_w - left_w) / (1.0 + right_frac + row_dend_frac)
    heat_h = (spec.canvas_height - bottom_h - col_title_h - legend_h) / (
        1.0 + top_frac + col_dend_frac
    )
    if heat_w <= 0 or heat_h <= 0:
        raise DataError("zero remaining heatmap area; canvas too small for the requested panes")

    top_h = heat_h * top_frac
    col_dend_h = heat_h * col_dend_frac
    right_w = heat_w * right_frac
    row_dend_w = heat_w * row_dend_frac

    x_heat = row_title_w + left_w
    y_heat = top_h + col_dend_h

    x_iv = axis_map(x_heat, heat_w, n_cols, col_sizes)
    y_iv = axis_map(y_heat, heat_h, n_rows, row_sizes)

    panes = [
        Pane("heatmap", Rect(x_heat, y_heat, heat_w, heat_h), x_iv, y_iv),
    ]
    if left_w > 0:
        panes.append(Pane("left_label", Rect(row_title_w, y_heat, left_w, heat_h), None, y_iv))
    if bottom_h > 0:
        panes.append(Pane("bottom_label", Rect(x_heat, y_heat + heat_h, heat_w, bottom_h), x_iv))
    if top_h > 0:
        panes.append(Pane("top_plot", Rect(x_heat, 0.0, heat_w, top_h), x_iv))
    if col_dend_h > 0:
        panes.append(Pane("col_dendrogram", Rect(x_heat, top_h, heat_w, col_dend_h), x_iv))
    if right_w > 0:
        panes.append(
            Pane(
                "right_plot",
                Rect(x_heat + heat_w + row_dend_w, y_heat, right_w, heat_h),
                None,
                y_iv,
            )
        )
    if row_dend_w > 0:
        panes.append(
            Pane("row_dendrogram", Rect(x_heat + heat_w, y_heat, row_dend_w, heat_h), None, y_iv)
        )
    if row_title_w > 0:
        panes.append(Pane("row_title", Rect(0.0, y_heat, row_title_w, heat_h)))
    if col_title_h > 0:
        panes.append(Pane("col_title", Rect(x_heat, y_heat + heat_h + bottom_h, heat_w, col_title_h)))
    if legend_h > 0:
        panes.append(
            Pane(
                "legend",
                Rect(x_heat, y_heat + heat_h + bottom_h + col_title_h, heat_w, legend_h),
            )
        )
    return PanelLayout(tuple(panes), (spec.canvas_width, spec.canvas_height))


def _validate_spec_against(
    spec: FigureSpec, m: LabeledMatrix | SmoothedMatrix, n_rows: int, n_cols: int
) -> None:
    if isinstance(m, SmoothedMatrix):
        src_rows, src_cols = m.source_dims
    else:
        src_rows, src_cols = m.n_rows, m.n_cols
        if spec.row_membership is not None and spec.row_membership.n != src_rows:
            raise DataError(
                f"row membership covers {spec.row_membership.n} objects, matrix has {src_rows} rows"
            )
        if spec.col_membership is not None and spec.col_membership.n != src_cols:
            raise DataError(
                f"column membership covers {spec.col_membership.n} objects, "
                f"matrix has {src_cols} columns"
            )
    if spec.top_panel is not None and len(spec.top_panel.values) != src_cols:
        raise DataError(
            f"top panel: expected {src_cols} values, got {len(spec.top_panel.values)}"
        )
    if spec.right_panel is not None and len(spec.right_panel.values) != src_rows:
        raise DataError(
            f"right panel: expected {src_rows} values, got {len(spec.right_panel.values)}"
        )
    for attr, pane_name in (("point_colors", "point"), ("bar_colors", "bar")):
        for panel, count in ((spec.top_panel, src_cols), (spec.right_panel, src_rows)):
            if panel is None:
                continue
            colors = getattr(panel, attr)
            if colors is not None and len(colors) not in (1, count):
                raise DataError(
                    f"{panel.side} panel: {len(colors)} {pane_name} colors for {count} observations"
                )
    for name, colors, count in (
        ("left_label_colors", spec.left_label_colors, n_rows),
        ("bottom_label_colors", spec.bottom_label_colors, n_cols),
    ):
        if colors is not None and len(colors) not in (1, count):
            raise DataError(f"{name}: {len(colors)} colors for {count} labels")


def dendrogram_geometry(
    t: Dendrogram, pane: Pane
) -> tuple[tuple[tuple[float, float], tuple[float, float]], ...]:
    """Rectilinear dendrogram segments for a col_dendrogram or row_dendrogram
    pane: leaves sit at interval midpoints on the heatmap edge, the deepest
    merge spans the full pane depth, and every merge contributes two risers
    plus one bar."""
    if pane.role == "col_dendrogram":
        intervals = pane.x_intervals
        depth = pane.rect.h
        tip = pane.rect.y1
    elif pane.role == "row_dendrogram":
        intervals = pane.y_intervals
        depth = pane.rect.w
        tip = pane.rect.x
    else:
        raise DataError(f"pane role {pane.role!r} cannot hold a dendrogram")
    if intervals is None or len(intervals) != t.n_leaves:
        have = 0 if intervals is None else len(intervals)
        raise DataError(f"dendrogram has {t.n_leaves} leaves, axis has {have} intervals")

    position = {leaf: i for i, leaf in enumerate(t.leaf_order)}
    mids = [(lo + hi) / 2.0 for lo, hi in intervals]
    max_h = t.max_height
    scale = depth / max_h if max_h > 0 else 0.0

    # along-axis coordinate and depth coordinate per already-placed node
    apex_pos: dict[int, float] = {leaf: mids[position[leaf]] for leaf in range(t.n_leaves)}
    apex_depth: dict[int, float] = {leaf: 0.0 for leaf in range(t.n_leaves)}
    segments: list[tuple[tuple[float, float], tuple[float, float]]] = []

    def point(pos: float, d: float) -> tuple[float, float]:
        if pane.role == "col_dendrogram":
            return (pos, tip - d)
        return (tip + d, pos)

    n = t.n_leaves
    for i, mg in enumerate(t.merges):
        d_bar = mg.height * scale
        pa, pb = apex_pos[mg.left], apex_pos[mg.right]
        da, db = apex_depth[mg.left], apex_depth[mg.right]
        segments.append((point(pa, da), point(pa, d_bar)))
        segments.append((point(pb, db), point(pb, d_bar)))
        segments.append((point(pa, d_bar), point(pb, d_bar)))
        apex_pos[n + i] = (pa + pb) / 2.0
        apex_depth[n + i] = d_bar
    return tuple(segments)
