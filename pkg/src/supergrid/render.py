"""Deterministic SVG rendering: heatmap cells, grid lines, label panes,
adjacent-plot glyphs (scatter, line, scatterline, smooth, bar, boxplot),
dendrograms, titles, and the legend.

Output is byte-deterministic: element and attribute order are fixed, every
numeric attribute is formatted with exactly 4 decimals, and colors are
canonical uppercase hex. Fonts are referenced by generic family only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cluster import Dendrogram, Membership
from .errors import DataError
from .layout import FigureSpec, Pane, PanelLayout, cluster_spans, dendrogram_geometry
from .matrix import AdjacentSeries, LabeledMatrix
from .palettes import normalize_color, parse_color, to_hex
from .smoothing import SmoothedMatrix

FONT_FAMILY = "monospace"
POINT_RADIUS = 2.5
LINE_WIDTH = 1.5
GRID_WIDTH = 1.0
PANEL_INSET = 4.0
LEGEND_STEPS = 64


def fmt(x: float) -> str:
    """Fixed 4-decimal formatting; negative zero is normalized away."""
    s = f"{float(x):.4f}"
    return "0.0000" if s == "-0.0000" else s


def escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class ColorScale:
    """Palette anchors over a value domain, plus the missing-value color."""

    palette: tuple[str, ...]
    breaks: tuple[float, ...] | None
    na_color: str
    domain: tuple[float, float]

    def __post_init__(self) -> None:
        palette = tuple(normalize_color(c) for c in self.palette)
        object.__setattr__(self, "palette", palette)
        object.__setattr__(self, "na_color", normalize_color(self.na_color))
        if len(palette) < 2:
            raise DataError(f"palette needs at least 2 colors, got {len(palette)}")
        if self.breaks is not None:
            breaks = tuple(float(b) for b in self.breaks)
            object.__setattr__(self, "breaks", breaks)
            if len(breaks) != len(palette):
                raise DataError(f"{len(breaks)} breaks for {len(palette)} palette colors")
            if any(b2 <= b1 for b1, b2 in zip(breaks, breaks[1:])):
                raise DataError("breaks must be strictly ascending")
        lo, hi = (float(v) for v in self.domain)
        if hi < lo:
            raise DataError(f"domain max {hi} below min {lo}")
        object.__setattr__(self, "domain", (lo, hi))

    @classmethod
    def from_spec(cls, spec: FigureSpec, values: np.ndarray) -> ColorScale:
        present = values[~np.isnan(values)]
        if present.size == 0:
            domain = (0.0, 0.0)
        else:
            domain = (float(present.min()), float(present.max()))
        return cls(spec.palette, spec.palette_breaks, spec.na_color, domain)

    def anchors(self) -> tuple[float, ...]:
        if self.breaks is not None:
            return self.breaks
        lo, hi = self.domain
        n = len(self.palette)
        return tuple(lo + (hi - lo) * i / (n - 1) for i in range(n))


def map_color(v: float | None, scale: ColorScale) -> str:
    """Piecewise-linear RGB interpolation of ``v`` along the palette anchors.

    Missing values map to the na color; values outside the anchor range clamp
    to the end colors; a degenerate domain with no explicit breaks maps every
    present value to the middle palette color.
    """
    if v is None or math.isnan(float(v)):
        return scale.na_color
    v = float(v)
    if scale.breaks is None and scale.domain[0] == scale.domain[1]:
        return scale.palette[len(scale.palette) // 2]
    anchors = scale.anchors()
    if v <= anchors[0]:
        return scale.palette[0]
    if v >= anchors[-1]:
        return scale.palette[-1]
    for i in range(len(anchors) - 1):
        if v <= anchors[i + 1]:
            a, b = anchors[i], anchors[i + 1]
            t = 0.0 if b == a else (v - a) / (b - a)
            c0 = parse_color(scale.palette[i])
            c1 = parse_color(scale.palette[i + 1])
            rgb = tuple(_round_half_up(x0 + t * (x1 - x0)) for x0, x1 in zip(c0, c1))
            return to_hex(rgb)  # type: ignore[arg-type]
    return scale.palette[-1]


@dataclass(frozen=True)
class BoxplotStats:
    q1: float
    median: float
    q3: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]

    def __post_init__(self) -> None:
        chain = (self.whisker_low, self.q1, self.median, self.q3, self.whisker_high)
        if any(b < a for a, b in zip(chain, chain[1:])):
            raise DataError(f"boxplot statistics out of order: {chain}")
        for x in self.outliers:
            if self.whisker_low <= x <= self.whisker_high:
                raise DataError(f"outlier {x} inside the whisker range")


def _quantile(sorted_values: list[float], p: float) -> float:
    n = len(sorted_values)
    if n == 1:
        return sorted_values[0]
    pos = p * (n - 1)
    lo = int(math.floor(pos))
    hi = min(lo + 1, n - 1)
    frac = pos - lo
    return sorted_values[lo] * (1 - frac) + sorted_values[hi] * frac


def boxplot_stats(values: list[float] | tuple[float, ...] | np.ndarray) -> BoxplotStats:
    """Five-number summary: quartiles by linear interpolation at p*(n-1),
    whiskers at the most extreme points within 1.5 IQR of the quartiles."""
    xs = sorted(float(v) for v in np.asarray(values, dtype=float) if not math.isnan(v))
    if not xs:
        raise DataError("boxplot needs at least one value")
    q1 = _quantile(xs, 0.25)
    med = _quantile(xs, 0.5)
    q3 = _quantile(xs, 0.75)
    iqr = q3 - q1
    lo_fence = q1 - 1.5 * iqr
    hi_fence = q3 + 1.5 * iqr
    inside = [x for x in xs if lo_fence <= x <= hi_fence]
    whisker_low = min(inside) if inside else q1
    whisker_high = max(inside) if inside else q3
    outliers = tuple(x for x in xs if x < whisker_low or x > whisker_high)
    return BoxplotStats(q1, med, q3, whisker_low, whisker_high, outliers)


def loess_fit(xs: np.ndarray, ys: np.ndarray, span: float) -> np.ndarray:
    """Local linear regression with tricube weights, evaluated at each x."""
    n = xs.size
    if n == 1:
        return ys.copy()
    q = max(2, int(math.ceil(span * n)))
    out = np.empty(n)
    for i in range(n):
        d = np.abs(xs - xs[i])
        dmax = np.sort(d)[min(q - 1, n - 1)]
        if dmax <= 0:
            w = (d == 0).astype(float)
        else:
            w = np.clip(1 - (d / dmax) ** 3, 0.0, None) ** 3
        sw = w.sum()
        xm = (w * xs).sum() / sw
        ym = (w * ys).sum() / sw
        sxx = (w * (xs - xm) ** 2).sum()
        if sxx <= 1e-12:
            out[i] = ym
        else:
            beta = (w * (xs - xm) * (ys - ym)).sum() / sxx
            out[i] = ym + beta * (xs[i] - xm)
    return out


class _Svg:
    def __init__(self, width: float, height: float) -> None:
        self.parts: list[str] = [
            '<?xml version="1.0" encoding="UTF-8"?>\n',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{fmt(width)}" height="{fmt(height)}" '
            f'viewBox="0 0 {fmt(width)} {fmt(height)}">\n',
        ]

    def rect(self, x: float, y: float, w: float, h: float, fill: str, opacity: float | None = None) -> None:
        extra = f' fill-opacity="{fmt(opacity)}"' if opacity is not None else ""
        self.parts.append(
            f'<rect x="{fmt(x)}" y="{fmt(y)}" width="{fmt(w)}" height="{fmt(h)}" fill="{fill}"{extra}/>\n'
        )

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str, width: float) -> None:
        self.parts.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{fmt(width)}"/>\n'
        )

    def circle(self, cx: float, cy: float, r: float, fill: str, opacity: float | None = None) -> None:
        extra = f' fill-opacity="{fmt(opacity)}"' if opacity is not None else ""
        self.parts.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(r)}" fill="{fill}"{extra}/>\n')

    def polyline(self, points: list[tuple[float, float]], stroke: str, width: float) -> None:
        coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{fmt(width)}"/>\n'
        )

    def text(
        self,
        x: float,
        y: float,
        content: str,
        size: float,
        anchor: str = "start",
        angle: float = 0.0,
        fill: str = "#000000",
    ) -> None:
        transform = ""
        if angle != 0.0:
            transform = f' transform="rotate({fmt(-angle)} {fmt(x)} {fmt(y)})"'
        self.parts.append(
            f'<text x="{fmt(x)}" y="{fmt(y)}" font-family="{FONT_FAMILY}" '
            f'font-size="{fmt(size)}" text-anchor="{anchor}" fill="{fill}"{transform}>'
            f"{escape(content)}</text>\n"
        )

    def finish(self) -> str:
        self.parts.append("</svg>\n")
        return "".join(self.parts)


_ANCHORS = {"left": "start", "center": "middle", "right": "end"}


def _value_range(values: np.ndarray, zero_based: bool) -> tuple[float, float]:
    present = values[~np.isnan(values)]
    if present.size == 0:
        return (0.0, 1.0)
    lo, hi = float(present.min()), float(present.max())
    if zero_based:
        lo, hi = min(lo, 0.0), max(hi, 0.0)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def _obs_positions(intervals: tuple[tuple[float, float], ...], count: int) -> list[float]:
    """Per-observation midpoints: the axis intervals when counts match (raw
    mode), otherwise an equal subdivision of the full extent (smoothed mode,
    where intervals are cluster blocks but glyphs stay per observation)."""
    if len(intervals) == count:
        return [(lo + hi) / 2.0 for lo, hi in intervals]
    lo = intervals[0][0]
    hi = intervals[-1][1]
    step = (hi - lo) / count
    return [lo + (i + 0.5) * step for i in range(count)]


def _panel_colors(colors: tuple[str, ...] | None, count: int, default: str) -> list[str]:
    if colors is None:
        return [default] * count
    if len(colors) == 1:
        return [normalize_color(colors[0])] * count
    return [normalize_color(c) for c in colors]


def _render_panel(
    svg: _Svg,
    pane: Pane,
    series: AdjacentSeries,
    spec: FigureSpec,
    membership: Membership | None,
) -> None:
    horizontal = pane.role == "top_plot"
    values = np.asarray(series.values, dtype=float)
    n = values.size
    intervals = pane.x_intervals if horizontal else pane.y_intervals
    assert intervals is not None
    positions = _obs_positions(intervals, n)

    zero_based = series.plot_type == "bar"
    lo, hi = _value_range(values, zero_based)
    rect = pane.rect
    depth = (rect.h if horizontal else rect.w) - 2 * PANEL_INSET

    def place(pos: float, v: float) -> tuple[float, float]:
        frac = (v - lo) / (hi - lo)
        if horizontal:
            return (pos, rect.y1 - PANEL_INSET - frac * depth)
        return (rect.x + PANEL_INSET + frac * depth, pos)

    present = ~np.isnan(values)
    pts = [place(positions[i], values[i]) for i in range(n) if present[i]]

    if series.plot_type in ("line", "scatterline") and len(pts) >= 2:
        svg.polyline(pts, "#555555", LINE_WIDTH)
    if series.plot_type == "smooth" and present.sum() >= 2:
        xs = np.asarray([positions[i] for i in range(n) if present[i]])
        ys = values[present]
        fit = loess_fit(xs, ys, spec.smooth_span)
        svg.polyline([place(x, y) for x, y in zip(xs, fit)], "#3366AA", LINE_WIDTH)
    if series.plot_type in ("scatter", "scatterline"):
        colors = _panel_colors(series.point_colors, n, "#333333")
        for i in range(n):
            if present[i]:
                x, y = place(positions[i], values[i])
                svg.circle(x, y, POINT_RADIUS, colors[i], series.point_alpha)
    if series.plot_type == "bar":
        colors = _panel_colors(series.bar_colors, n, "#888888")
        base = place(0.0, 0.0)
        for i in range(n):
            if not present[i]:
                continue
            tip = place(positions[i], values[i])
            if len(intervals) == n:
                cell_lo, cell_hi = intervals[i]
            else:
                step = (intervals[-1][1] - intervals[0][0]) / n
                cell_lo, cell_hi = positions[i] - step / 2, positions[i] + step / 2
            width = (cell_hi - cell_lo) * 0.8
            start = cell_lo + (cell_hi - cell_lo) * 0.1
            if horizontal:
                y0, y1 = sorted((base[1], tip[1]))
                svg.rect(start, y0, width, y1 - y0, colors[i])
            else:
                x0, x1 = sorted((base[0], tip[0]))
                svg.rect(x0, start, x1 - x0, width, colors[i])
    if series.plot_type == "boxplot":
        _render_boxplots(svg, pane, series, membership, positions, place)


def _render_boxplots(svg, pane, series, membership, positions, place) -> None:
    values = np.asarray(series.values, dtype=float)
    horizontal = pane.role == "top_plot"
    if membership is not None:
        groups = [
            (np.asarray(membership.labels) == c).nonzero()[0] for c in range(membership.k)
        ]
    else:
        groups = [np.arange(values.size)]
    intervals = pane.x_intervals if horizontal else pane.y_intervals
    assert intervals is not None
    for g, idx in enumerate(groups):
        vals = values[idx]
        vals = vals[~np.isnan(vals)]
        if vals.size == 0:
            continue
        stats = boxplot_stats(vals)
        if membership is not None and len(intervals) == membership.k:
            span_lo, span_hi = intervals[g]
        else:
            span_lo = min(positions[i] for i in idx)
            span_hi = max(positions[i] for i in idx)
            if span_lo == span_hi:
                half = (intervals[0][1] - intervals[0][0]) / 2
                span_lo, span_hi = span_lo - half, span_hi + half
        mid = (span_lo + span_hi) / 2
        box_w = (span_hi - span_lo) * 0.6
        b0 = mid - box_w / 2
        q1p = place(mid, stats.q1)
        q3p = place(mid, stats.q3)
        medp = place(mid, stats.median)
        wlo = place(mid, stats.whisker_low)
        whi = place(mid, stats.whisker_high)
        if horizontal:
            top = min(q1p[1], q3p[1])
            svg.rect(b0, top, box_w, abs(q3p[1] - q1p[1]), "#B0C4D8")
            svg.line(b0, medp[1], b0 + box_w, medp[1], "#333333", LINE_WIDTH)
            svg.line(mid, min(q1p[1], q3p[1]), mid, whi[1], "#333333", GRID_WIDTH)
            svg.line(mid, max(q1p[1], q3p[1]), mid, wlo[1], "#333333", GRID_WIDTH)
            svg.line(b0, whi[1], b0 + box_w, whi[1], "#333333", GRID_WIDTH)
            svg.line(b0, wlo[1], b0 + box_w, wlo[1], "#333333", GRID_WIDTH)
        else:
            left = min(q1p[0], q3p[0])
            svg.rect(left, b0, abs(q3p[0] - q1p[0]), box_w, "#B0C4D8")
            svg.line(medp[0], b0, medp[0], b0 + box_w, "#333333", LINE_WIDTH)
            svg.line(min(q1p[0], q3p[0]), mid, wlo[0], mid, "#333333", GRID_WIDTH)
            svg.line(max(q1p[0], q3p[0]), mid, whi[0], mid, "#333333", GRID_WIDTH)
            svg.line(whi[0], b0, whi[0], b0 + box_w, "#333333", GRID_WIDTH)
            svg.line(wlo[0], b0, wlo[0], b0 + box_w, "#333333", GRID_WIDTH)
        for x in stats.outliers:
            px, py = place(mid, x)
            svg.circle(px, py, POINT_RADIUS * 0.8, "#333333", None)


def _label_entries(
    spec: FigureSpec,
    m: LabeledMatrix | SmoothedMatrix,
    side: str,
    intervals: tuple[tuple[float, float], ...],
) -> list[tuple[str, float, float]]:
    """(text, span_lo, span_hi) per label, covering cluster runs when needed."""
    mode = spec.left_label if side == "left" else spec.bottom_label
    if isinstance(m, SmoothedMatrix) or mode == "variable":
        names = m.row_names if side == "left" else m.col_names
        return [(names[i], intervals[i][0], intervals[i][1]) for i in range(len(intervals))]
    mem = spec.row_membership if side == "left" else spec.col_membership
    assert mem is not None
    names = _cluster_display_names(mem)
    entries = []
    for lab, start, stop in cluster_spans(mem.labels):
        entries.append((names[lab], intervals[start][0], intervals[stop - 1][1]))
    return entries


def _cluster_display_names(mem: Membership) -> tuple[str, ...]:
    if mem.label_names is not None:
        return mem.label_names
    return tuple(f"c{i + 1}" for i in range(mem.k))


def _render_labels(svg: _Svg, pane: Pane, spec: FigureSpec, m, side: str) -> None:
    rect = pane.rect
    font = spec.label_font_size
    pad = spec.label_padding
    if side == "left":
        intervals = pane.y_intervals
        colors = spec.left_label_colors
        alpha = spec.left_label_alpha
        angle = spec.left_label_angle
        align = spec.left_label_alignment
    else:
        intervals = pane.x_intervals
        colors = spec.bottom_label_colors
        alpha = spec.bottom_label_alpha
        angle = spec.bottom_label_angle
        align = spec.bottom_label_alignment
    assert intervals is not None
    entries = _label_entries(spec, m, side, intervals)

    if colors is not None:
        bg = _panel_colors(colors, len(entries), "#FFFFFF")
        for i, (_, lo, hi) in enumerate(entries):
            if side == "left":
                svg.rect(rect.x, lo, rect.w, hi - lo, bg[i], alpha)
            else:
                svg.rect(lo, rect.y, hi - lo, rect.h, bg[i], alpha)

    anchor = _ANCHORS[align]
    for text, lo, hi in entries:
        mid = (lo + hi) / 2.0
        if side == "left":
            y = mid + 0.35 * font
            if align == "left":
                x = rect.x + pad
            elif align == "right":
                x = rect.x1 - pad
            else:
                x = rect.x + rect.w / 2.0
            svg.text(x, y, text, font, anchor, angle)
        else:
            x = mid
            if angle == 0.0:
                y = rect.y + pad + font
            else:
                y = rect.y + pad + 0.35 * font
            svg.text(x, y, text, font, anchor, angle)


def _render_legend(svg: _Svg, pane: Pane, scale: ColorScale, font: float, pad: float) -> None:
    rect = pane.rect
    gw = min(200.0, rect.w * 0.8)
    left = rect.x + (rect.w - gw) / 2.0
    bar_h = font
    y = rect.y + pad
    lo, hi = scale.domain
    for i in range(LEGEND_STEPS):
        t = (i + 0.5) / LEGEND_STEPS
        v = lo + (hi - lo) * t
        svg.rect(left + gw * i / LEGEND_STEPS, y, gw / LEGEND_STEPS, bar_h, map_color(v, scale))
    ty = y + bar_h + font
    svg.text(left, ty, fmt(lo), font * 0.9, "middle")
    svg.text(left + gw, ty, fmt(hi), font * 0.9, "middle")


def render_scene(
    layout: PanelLayout,
    m: LabeledMatrix | SmoothedMatrix,
    spec: FigureSpec,
    row_dendrogram: Dendrogram | None = None,
    col_dendrogram: Dendrogram | None = None,
) -> str:
    """Emit the full figure as an SVG 1.1 document (text).

    All data/pane consistency is validated before a single byte of output is
    produced; rendering the same inputs twice yields identical bytes.
    """
    heat = layout.require("heatmap")
    assert heat.x_intervals is not None and heat.y_intervals is not None
    smoothed = isinstance(m, SmoothedMatrix)
    values = m.block_values if smoothed else m.values
    n_rows, n_cols = values.shape
    if len(heat.y_intervals) != n_rows or len(heat.x_intervals) != n_cols:
        raise DataError(
            f"layout is {len(heat.y_intervals)}x{len(heat.x_intervals)}, "
            f"matrix is {n_rows}x{n_cols}"
        )
    for flag, pane_role, dend, axis_n in (
        (spec.col_dendrogram, "col_dendrogram", col_dendrogram, len(heat.x_intervals)),
        (spec.row_dendrogram, "row_dendrogram", row_dendrogram, len(heat.y_intervals)),
    ):
        if flag:
            if dend is None:
                raise DataError(f"{pane_role} requested but no dendrogram supplied")
            if dend.n_leaves != axis_n:
                raise DataError(
                    f"{pane_role}: dendrogram has {dend.n_leaves} leaves, axis has {axis_n}"
                )
    # parse every configured color up front so bad input fails before output
    scale = ColorScale.from_spec(spec, values)
    for c in (spec.grid_hline_color, spec.grid_vline_color, spec.dendrogram_color):
        if c is not None:
            normalize_color(c)
    for colors in (spec.left_label_colors, spec.bottom_label_colors):
        if colors is not None:
            for c in colors:
                normalize_color(c)
    for panel in (spec.top_panel, spec.right_panel):
        if panel is not None:
            for colors in (panel.point_colors, panel.bar_colors):
                if colors is not None:
                    for c in colors:
                        normalize_color(c)
            if panel.plot_type == "dendrogram":
                raise DataError(
                    f"{panel.side} panel: dendrogram panels carry no series; "
                    "use the dendrogram flag for this axis"
                )

    svg = _Svg(*layout.canvas)
    svg.rect(0.0, 0.0, layout.canvas[0], layout.canvas[1], "#FFFFFF")

    # heatmap cells, row-major
    for i, (ylo, yhi) in enumerate(heat.y_intervals):
        for j, (xlo, xhi) in enumerate(heat.x_intervals):
            svg.rect(xlo, ylo, xhi - xlo, yhi - ylo, map_color(values[i, j], scale))

    # grid lines between cells
    if spec.grid_hline_color is not None:
        color = normalize_color(spec.grid_hline_color)
        for ylo, _ in heat.y_intervals[1:]:
            svg.line(heat.rect.x, ylo, heat.rect.x1, ylo, color, GRID_WIDTH)
    if spec.grid_vline_color is not None:
        color = normalize_color(spec.grid_vline_color)
        for xlo, _ in heat.x_intervals[1:]:
            svg.line(xlo, heat.rect.y, xlo, heat.rect.y1, color, GRID_WIDTH)

    left = layout.pane("left_label")
    if left is not None:
        _render_labels(svg, left, spec, m, "left")
    bottom = layout.pane("bottom_label")
    if bottom is not None:
        _render_labels(svg, bottom, spec, m, "bottom")

    top = layout.pane("top_plot")
    if top is not None and spec.top_panel is not None:
        col_mem = m.col_membership if smoothed else spec.col_membership
        _render_panel(svg, top, spec.top_panel, spec, col_mem)
        if spec.top_panel.axis_name:
            svg.text(
                top.rect.x + spec.label_font_size,
                top.rect.y + top.rect.h / 2.0,
                spec.top_panel.axis_name,
                spec.label_font_size * 0.9,
                "middle",
                90.0,
            )
    right = layout.pane("right_plot")
    if right is not None and spec.right_panel is not None:
        row_mem = m.row_membership if smoothed else spec.row_membership
        _render_panel(svg, right, spec.right_panel, spec, row_mem)
        if spec.right_panel.axis_name:
            svg.text(
                right.rect.x + right.rect.w / 2.0,
                right.rect.y1 - spec.label_padding,
                spec.right_panel.axis_name,
                spec.label_font_size * 0.9,
                "middle",
            )

    dend_color = normalize_color(spec.dendrogram_color)
    for pane_role, dend in (("col_dendrogram", col_dendrogram), ("row_dendrogram", row_dendrogram)):
        pane = layout.pane(pane_role)
        if pane is not None and dend is not None:
            for (x1, y1), (x2, y2) in dendrogram_geometry(dend, pane):
                svg.line(x1, y1, x2, y2, dend_color, GRID_WIDTH)

    row_title_pane = layout.pane("row_title")
    if row_title_pane is not None and spec.row_title:
        r = row_title_pane.rect
        svg.text(
            r.x + spec.title_font_size,
            r.y + r.h / 2.0,
            spec.row_title,
            spec.title_font_size,
            "middle",
            90.0,
        )
    col_title_pane = layout.pane("col_title")
    if col_title_pane is not None and spec.column_title:
        r = col_title_pane.rect
        svg.text(
            r.x + r.w / 2.0,
            r.y1 - spec.label_padding,
            spec.column_title,
            spec.title_font_size,
            "middle",
        )

    legend_pane = layout.pane("legend")
    if legend_pane is not None:
        _render_legend(svg, legend_pane, scale, spec.label_font_size, spec.label_padding)

    return svg.finish()


def render_line_chart(
    xs: list[float],
    ys: list[float],
    title: str,
    x_label: str,
    y_label: str,
    width: float = 480.0,
    height: float = 320.0,
) -> str:
    """Small standalone line chart (used for the diagnostics k-curves)."""
    if len(xs) != len(ys) or not xs:
        raise DataError("line chart needs matching non-empty x and y lists")
    margin = 48.0
    plot_w = width - 2 * margin
    plot_h = height - 2 * margin
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    def px(x: float) -> float:
        return margin + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return height - margin - (y - y_lo) / (y_hi - y_lo) * plot_h

    svg = _Svg(width, height)
    svg.rect(0.0, 0.0, width, height, "#FFFFFF")
    svg.line(margin, height - margin, width - margin, height - margin, "#333333", 1.0)
    svg.line(margin, margin, margin, height - margin, "#333333", 1.0)
    svg.polyline([(px(x), py(y)) for x, y in zip(xs, ys)], "#3366AA", LINE_WIDTH)
    for x, y in zip(xs, ys):
        svg.circle(px(x), py(y), POINT_RADIUS, "#3366AA")
        svg.text(px(x), height - margin + 14.0, fmt(x).rstrip("0").rstrip("."), 10.0, "middle")
    svg.text(margin - 6.0, py(y_lo) + 3.5, fmt(y_lo), 9.0, "end")
    svg.text(margin - 6.0, py(y_hi) + 3.5, fmt(y_hi), 9.0, "end")
    svg.text(width / 2.0, margin / 2.0, title, 13.0, "middle")
    svg.text(width / 2.0, height - 10.0, x_label, 11.0, "middle")
    svg.text(14.0, height / 2.0, y_label, 11.0, "middle", 90.0)
    return svg.finish()
