"""Command-line entry points: render, diagnose, smooth, fixtures.

Pipeline for render: load -> order -> (cluster) -> (smooth) -> layout ->
render. Outputs are written atomically (temp + rename) only after the whole
run has succeeded, so failures leave nothing half-written. Exit codes:
0 success, 2 config error, 3 data error, 1 internal fault.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import re
import sys
import traceback
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .cluster import (
    Dendrogram,
    Membership,
    cosine_distance_matrix,
    hcluster,
    kmeans,
    load_membership,
    pam,
)
from .config import RunConfig, apply_overrides, load_config, validate_config
from .diagnostics import stability_curve
from .errors import ConfigError, DataError
from .layout import FigureSpec, compute_layout
from .matrix import (
    AdjacentSeries,
    LabeledMatrix,
    Ordering,
    apply_ordering,
    load_matrix,
    load_series,
    order_by_row_mean,
    transpose,
)
from .palettes import PALETTES
from .render import render_line_chart, render_scene
from .smoothing import identity_membership, smooth_by_cluster


def _resolve_seed(cfg: RunConfig) -> int:
    if cfg.seed is not None:
        return cfg.seed
    env = os.environ.get("SUPERGRID_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"SUPERGRID_SEED: expected integer, got {env!r}") from None
    return 0


class _Paths:
    """Resolves config-relative paths and records every input consumed."""

    def __init__(self, config_dir: Path | None, override_keys: set[str]) -> None:
        self.config_dir = config_dir
        self.override_keys = override_keys
        self.inputs: dict[str, Path] = {}

    def input_path(self, key: str, value: str) -> Path:
        p = Path(value)
        if not p.is_absolute() and key not in self.override_keys and self.config_dir is not None:
            p = self.config_dir / p
        self.inputs[value] = p
        return p

    def output_path(self, value: str) -> Path:
        p = Path(value)
        if (
            not p.is_absolute()
            and "out" not in self.override_keys
            and self.config_dir is not None
        ):
            p = self.config_dir / p
        return p


def _colors_tuple(value) -> tuple[str, ...] | None:
    if value is None:
        return None
    if isinstance(value, str):
        return (value,)
    return tuple(value)


def _axis_clusters(
    cfg: RunConfig,
    m: LabeledMatrix,
    axis: str,
    paths: _Paths,
    seed: int,
) -> tuple[Membership | None, Dendrogram | None]:
    """Membership / dendrogram for one axis of the original matrix."""
    mem_key = cfg.membership_rows if axis == "rows" else cfg.membership_cols
    count = cfg.n_clusters_rows if axis == "rows" else cfg.n_clusters_cols
    dend_flag = cfg.row_dendrogram if axis == "rows" else cfg.col_dendrogram
    work = m if axis == "rows" else transpose(m)

    if mem_key is not None:
        path = paths.input_path(f"membership_{axis}", mem_key)
        return load_membership(path, expected_names=work.row_names), None
    if count is not None:
        if cfg.method == "kmeans":
            mem = kmeans(work, count, seed=seed, restarts=cfg.restarts, max_iter=cfg.max_iter)
            return mem, None
        mem = pam(cosine_distance_matrix(work), count)
        assert mem.medoid_indices is not None
        return mem.with_names(tuple(work.row_names[i] for i in mem.medoid_indices)), None
    if dend_flag:
        return None, hcluster(cosine_distance_matrix(work), cfg.linkage)
    return None, None


def _explicit_ordering(spec_value, m: LabeledMatrix, axis: str) -> Ordering | None:
    if spec_value is None:
        return None
    axis_name = "row" if axis == "rows" else "column"
    if isinstance(spec_value, str):
        work = m if axis == "rows" else transpose(m)
        ordering = order_by_row_mean(work, "asc" if spec_value == "mean_asc" else "desc")
        return Ordering(axis_name, ordering.permutation)
    return Ordering(axis_name, tuple(spec_value))


def _compose_axis_order(
    explicit: Ordering | None, mem: Membership | None, dend: Dendrogram | None, n: int, axis: str
) -> tuple[tuple[int, ...], Membership | None]:
    """Final display permutation plus the membership aligned to it.

    Explicit ordering applies first; a membership then groups the axis into
    contiguous cluster runs (stable, so the explicit order survives inside
    each cluster); a dendrogram's leaf order is the whole ordering.
    """
    axis_name = "row" if axis == "rows" else "column"
    if dend is not None:
        return dend.leaf_order, None
    perm = list(explicit.permutation) if explicit is not None else list(range(n))
    if explicit is not None and len(perm) != n:
        raise DataError(f"{axis_name} ordering length {len(perm)} != {n}")
    if mem is None:
        return tuple(perm), None
    if mem.n != n:
        raise DataError(f"{axis_name} membership covers {mem.n} objects, axis has {n}")
    labels_after = [mem.labels[i] for i in perm]
    group = sorted(range(n), key=lambda i: labels_after[i])
    final = tuple(perm[i] for i in group)
    return final, mem.permuted(final)


@dataclass
class PreparedScene:
    matrix: LabeledMatrix
    display: object  # LabeledMatrix | SmoothedMatrix
    spec: FigureSpec
    row_dendrogram: Dendrogram | None
    col_dendrogram: Dendrogram | None


def prepare_scene(cfg: RunConfig, paths: _Paths, seed: int) -> PreparedScene:
    if cfg.matrix is None:
        raise ConfigError("matrix: required")
    m = load_matrix(paths.input_path("matrix", cfg.matrix))

    # a matrix column can serve as the right-hand series
    yr_from_matrix: np.ndarray | None = None
    if cfg.yr_matrix_column is not None:
        if cfg.yr_matrix_column not in m.col_names:
            raise DataError(f"yr_matrix_column: no column named {cfg.yr_matrix_column!r}")
        j = m.col_names.index(cfg.yr_matrix_column)
        yr_from_matrix = m.values[:, j].copy()
        keep = [c for c in range(m.n_cols) if c != j]
        m = LabeledMatrix(
            m.values[:, keep].copy(),
            m.row_names,
            tuple(m.col_names[c] for c in keep),
        )

    row_mem0, row_dend = _axis_clusters(cfg, m, "rows", paths, seed)
    col_mem0, col_dend = _axis_clusters(cfg, m, "cols", paths, seed)
    row_explicit = _explicit_ordering(cfg.order_rows, m, "rows")
    col_explicit = _explicit_ordering(cfg.order_cols, m, "cols")
    row_perm, row_mem = _compose_axis_order(row_explicit, row_mem0, row_dend, m.n_rows, "rows")
    col_perm, col_mem = _compose_axis_order(col_explicit, col_mem0, col_dend, m.n_cols, "cols")
    ordered = apply_ordering(
        m, Ordering("row", row_perm), Ordering("column", col_perm)
    )
    if yr_from_matrix is not None:
        yr_from_matrix = yr_from_matrix[list(row_perm)]

    top_panel = None
    if cfg.yt is not None:
        _, values = load_series(paths.input_path("yt", cfg.yt))
        top_panel = AdjacentSeries(
            "top",
            values,
            plot_type=cfg.yt_plot_type,
            axis_name=cfg.yt_axis_name,
            point_colors=_colors_tuple(cfg.yt_obs_col),
            point_alpha=cfg.yt_point_alpha,
            bar_colors=_colors_tuple(cfg.yt_bar_col),
        )
    right_panel = None
    right_values: tuple[float, ...] | None = None
    if cfg.yr is not None:
        _, right_values = load_series(paths.input_path("yr", cfg.yr))
    elif yr_from_matrix is not None:
        right_values = tuple(float(v) for v in yr_from_matrix)
    if right_values is not None:
        right_panel = AdjacentSeries(
            "right",
            right_values,
            plot_type=cfg.yr_plot_type,
            axis_name=cfg.yr_axis_name,
            point_colors=_colors_tuple(cfg.yr_obs_col),
            point_alpha=cfg.yr_point_alpha,
            bar_colors=_colors_tuple(cfg.yr_bar_col),
        )

    palette = PALETTES[cfg.heat_pal] if isinstance(cfg.heat_pal, str) else tuple(cfg.heat_pal)
    spec = FigureSpec(
        palette=palette,
        palette_breaks=tuple(cfg.heat_pal_breaks) if cfg.heat_pal_breaks else None,
        na_color=cfg.heat_na_col,
        row_membership=row_mem,
        col_membership=col_mem,
        row_dendrogram=row_dend is not None,
        col_dendrogram=col_dend is not None,
        row_order=Ordering("row", row_perm),
        col_order=Ordering("column", col_perm),
        smooth_heat=cfg.smooth_heat,
        top_panel=top_panel,
        right_panel=right_panel,
        left_label=cfg.left_label,
        bottom_label=cfg.bottom_label,
        left_label_colors=_colors_tuple(cfg.left_label_col),
        bottom_label_colors=_colors_tuple(cfg.bottom_label_col),
        left_label_alpha=cfg.left_label_alpha,
        bottom_label_alpha=cfg.bottom_label_alpha,
        left_label_angle=cfg.left_label_text_angle,
        bottom_label_angle=cfg.bottom_label_text_angle,
        left_label_alignment=cfg.left_label_text_alignment,
        bottom_label_alignment=cfg.bottom_label_text_alignment,
        grid_hline_color=cfg.grid_hline_col,
        grid_vline_color=cfg.grid_vline_col,
        row_title=cfg.row_title,
        column_title=cfg.column_title,
        legend=cfg.legend,
        canvas_width=cfg.width,
        canvas_height=cfg.height,
        label_font_size=cfg.label_size,
        title_font_size=cfg.title_size,
    )

    display: object = ordered
    if cfg.smooth_heat:
        row_eff = row_mem or identity_membership(ordered.n_rows, ordered.row_names)
        col_eff = col_mem or identity_membership(ordered.n_cols, ordered.col_names)
        display = smooth_by_cluster(ordered, row_eff, col_eff, cfg.smooth_stat)
    return PreparedScene(ordered, display, spec, row_dend, col_dend)


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _atomic_write_all(outputs: dict[Path, bytes]) -> None:
    for path, data in outputs.items():
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)


def _manifest(command: str, seed: int, paths: _Paths) -> bytes:
    doc = {
        "command": command,
        "inputs": {key: f"sha256:{_sha256(p)}" for key, p in sorted(paths.inputs.items())},
        "seed": seed,
        "version": __version__,
    }
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def cmd_render(cfg: RunConfig, paths: _Paths) -> int:
    if cfg.out is None:
        raise ConfigError("out: required")
    seed = _resolve_seed(cfg)
    scene = prepare_scene(cfg, paths, seed)
    layout = compute_layout(scene.spec, scene.display)
    svg = render_scene(
        layout, scene.display, scene.spec, scene.row_dendrogram, scene.col_dendrogram
    )
    out = paths.output_path(cfg.out)
    manifest_path = out.with_suffix(".manifest.json")
    _atomic_write_all(
        {out: svg.encode("utf-8"), manifest_path: _manifest("render", seed, paths)}
    )
    return 0


def cmd_diagnose(cfg: RunConfig, paths: _Paths) -> int:
    if cfg.matrix is None:
        raise ConfigError("matrix: required")
    if cfg.out is None:
        raise ConfigError("out: required")
    seed = _resolve_seed(cfg)
    m = load_matrix(paths.input_path("matrix", cfg.matrix))
    reports = stability_curve(
        m,
        range(cfg.k_min, cfg.k_max + 1),
        method=cfg.method,
        subsamples=cfg.subsamples,
        fraction=cfg.subsample_fraction,
        seed=seed,
        restarts=cfg.restarts,
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "mean_jaccard", "mean_silhouette"])
    for r in reports:
        writer.writerow([r.k, repr(r.mean_pairwise_jaccard), repr(r.mean_silhouette)])
    out = paths.output_path(cfg.out)
    ks = [float(r.k) for r in reports]
    jaccard_svg = render_line_chart(
        ks,
        [r.mean_pairwise_jaccard for r in reports],
        title="Jaccard stability",
        x_label="clusters (k)",
        y_label="mean pairwise Jaccard",
    )
    sil_svg = render_line_chart(
        ks,
        [r.mean_silhouette for r in reports],
        title="Silhouette width",
        x_label="clusters (k)",
        y_label="mean silhouette",
    )
    _atomic_write_all(
        {
            out: buf.getvalue().encode("utf-8"),
            out.with_name(out.stem + "_jaccard.svg"): jaccard_svg.encode("utf-8"),
            out.with_name(out.stem + "_silhouette.svg"): sil_svg.encode("utf-8"),
        }
    )
    return 0


def cmd_smooth(cfg: RunConfig, paths: _Paths) -> int:
    if cfg.matrix is None:
        raise ConfigError("matrix: required")
    if cfg.out is None:
        raise ConfigError("out: required")
    seed = _resolve_seed(cfg)
    m = load_matrix(paths.input_path("matrix", cfg.matrix))
    row_mem, _ = _axis_clusters(cfg, m, "rows", paths, seed)
    col_mem, _ = _axis_clusters(cfg, m, "cols", paths, seed)
    sm = smooth_by_cluster(
        m,
        row_mem or identity_membership(m.n_rows, m.row_names),
        col_mem or identity_membership(m.n_cols, m.col_names),
        cfg.smooth_stat,
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(sm.col_names))
    for name, row in zip(sm.row_names, sm.block_values):
        writer.writerow([name] + ["NA" if np.isnan(v) else repr(float(v)) for v in row])
    out = paths.output_path(cfg.out)
    _atomic_write_all({out: buf.getvalue().encode("utf-8")})
    return 0


def cmd_fixtures(out_dir: str) -> int:
    from .fixtures import write_fixtures

    written = write_fixtures(out_dir)
    for path in written:
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supergrid",
        description="Extendable heatmaps: clustered matrices, adjacent panels, dendrograms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("render", "render a figure to SVG (plus a run manifest)"),
        ("diagnose", "emit k-selection stability curves as CSV + SVG charts"),
        ("smooth", "emit the cluster-smoothed block matrix as CSV"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--matrix", help="matrix CSV (overrides config)")
        p.add_argument("--out", help="output path (overrides config)")
        p.add_argument("--seed", type=int, help="random seed (overrides config)")
    fx = sub.add_parser("fixtures", help="write the bundled example fixtures")
    fx.add_argument("--out", required=True, help="target directory")
    return parser


_OVERRIDE_RE = re.compile(r"--([A-Za-z0-9_]+)=(.*)", re.DOTALL)


def _parse_overrides(extra: list[str]) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for token in extra:
        match = _OVERRIDE_RE.fullmatch(token)
        if match is None:
            raise ConfigError(f"unrecognized argument {token!r}; overrides look like --key=value")
        overrides[match.group(1)] = match.group(2)
    return overrides


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    try:
        if args.command == "fixtures":
            if extra:
                raise ConfigError(f"unrecognized argument {extra[0]!r}")
            return cmd_fixtures(args.out)

        overrides = _parse_overrides(extra)

        raw: dict = {}
        config_dir: Path | None = None
        if args.config is not None:
            config_path = Path(args.config)
            raw = load_config(config_path)
            config_dir = config_path.parent
        merged = apply_overrides(raw, overrides)
        # named flags carry typed values and win over generic overrides
        cli_keys = set(overrides)
        for key in ("matrix", "out"):
            value = getattr(args, key)
            if value is not None:
                merged[key] = value
                cli_keys.add(key)
        if args.seed is not None:
            merged["seed"] = args.seed
            cli_keys.add("seed")
        cfg = validate_config(merged)
        paths = _Paths(config_dir, cli_keys)
        if args.config is not None:
            paths.inputs[args.config] = Path(args.config)

        if args.command == "render":
            return cmd_render(cfg, paths)
        if args.command == "diagnose":
            return cmd_diagnose(cfg, paths)
        if args.command == "smooth":
            return cmd_smooth(cfg, paths)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
