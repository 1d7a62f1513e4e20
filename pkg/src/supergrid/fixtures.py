"""Bundled desk-scale fixtures shaped like the three case studies.

Everything here is synthetic and seeded, so `supergrid fixtures --out DIR`
writes byte-identical files on every run:

* organ58   - 58 x 9 rates matrix with one missing cell, a right bar series
              (ranking) and a top scatterline series (yearly totals)
* word35    - 35 x 35 similarity matrix drawn with row/column dendrograms
* word60    - 60 x 60 similarity matrix for PAM clustering plus smoothing
* voxel     - 120 x 200 two-block response matrix with a top scatter series
* blobs30   - 30 x 2 points in three planted blobs for the diagnose command
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .matrix import LabeledMatrix, apply_ordering, order_by_row_mean, save_matrix, save_series

REGION_COLORS = ("#4CAF50", "#9C27B0", "#FFC107", "#FF9800", "#E91E63", "#8BC34A")
REGION_COLORS_DARK = ("#2E7D32", "#6A1B9A", "#FF8F00", "#E65100", "#AD1457", "#558B2F")


def _write_json(path: Path, obj: dict) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _organ58(out: Path) -> list[Path]:
    rng = np.random.default_rng(580109)
    n, years = 58, 9
    regions = rng.integers(0, 6, size=n)
    base = np.exp(rng.uniform(0.0, 3.5, size=n))
    trend = rng.uniform(-0.08, 0.25, size=n)
    values = base[:, None] * (1.0 + trend[:, None] * np.arange(years)[None, :])
    values = values + rng.normal(0.0, 0.3, size=(n, years))
    values = np.clip(values, 0.0, None)
    values[6, 1] = np.nan  # one country skipped one survey year
    row_names = tuple(f"CT{i + 1:02d}" for i in range(n))
    col_names = tuple(str(2006 + j) for j in range(years))
    m = LabeledMatrix(values, row_names, col_names)
    save_matrix(m, out / "organ58.csv")

    # ranking anti-correlated with the rate, plus noise
    rate = np.nanmean(values, axis=1)
    rank_noise = rate + rng.normal(0.0, rate.std() * 0.35, size=n)
    ranks = np.empty(n, dtype=int)
    ranks[np.argsort(-rank_noise, kind="stable")] = np.arange(1, n + 1)

    # series files align by position with the figure's displayed order
    order = order_by_row_mean(m, "asc")
    perm = list(order.permutation)
    ordered = apply_ordering(m, rows=order)
    save_series(ordered.row_names, [float(ranks[i]) for i in perm], out / "organ58_hdi.csv")
    totals = np.nansum(values, axis=0)
    save_series(col_names, [float(t) for t in totals], out / "organ58_years.csv")

    region_light = [REGION_COLORS[regions[i]] for i in perm]
    region_dark = [REGION_COLORS_DARK[regions[i]] for i in perm]
    _write_json(
        out / "organ58.json",
        {
            "matrix": "organ58.csv",
            "out": "organ58.svg",
            "order_rows": "mean_asc",
            "heat_pal": "bupu",
            "heat_na_col": "white",
            "grid_vline_col": "white",
            "yr": "organ58_hdi.csv",
            "yr_plot_type": "bar",
            "yr_axis_name": "Development ranking",
            "yr_bar_col": region_dark,
            "yt": "organ58_years.csv",
            "yt_plot_type": "scatterline",
            "yt_axis_name": "Total per year",
            "left_label_col": region_light,
            "left_label_alpha": 0.3,
            "left_label_text_alignment": "right",
            "bottom_label_col": "white",
            "bottom_label_text_angle": 90,
            "bottom_label_text_alignment": "right",
            "legend": True,
            "height": 900,
        },
    )
    return [
        out / "organ58.csv",
        out / "organ58_hdi.csv",
        out / "organ58_years.csv",
        out / "organ58.json",
    ]


def _similarity_fixture(
    out: Path, name: str, groups: int, per_group: int, dims: int, seed: int, noise: float
) -> LabeledMatrix:
    rng = np.random.default_rng(seed)
    n = groups * per_group
    directions = rng.normal(size=(groups, dims))
    directions /= np.sqrt((directions**2).sum(axis=1))[:, None]
    vectors = np.repeat(directions, per_group, axis=0) + rng.normal(0.0, noise, size=(n, dims))
    norms = np.sqrt((vectors**2).sum(axis=1))
    unit = vectors / norms[:, None]
    sim = np.clip((unit @ unit.T + (unit @ unit.T).T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(sim, 1.0)
    names = tuple(f"w{i + 1:02d}" for i in range(n))
    m = LabeledMatrix(sim, names, names)
    save_matrix(m, out / f"{name}.csv")
    return m


def _word35(out: Path) -> list[Path]:
    _similarity_fixture(out, "word35", groups=5, per_group=7, dims=8, seed=350211, noise=0.18)
    _write_json(
        out / "word35.json",
        {
            "matrix": "word35.csv",
            "out": "word35.svg",
            "row_dendrogram": True,
            "col_dendrogram": True,
            "grid_hline_col": "white",
            "grid_vline_col": "white",
            "bottom_label_text_angle": 90,
            "bottom_label_text_alignment": "right",
            "legend": True,
        },
    )
    return [out / "word35.csv", out / "word35.json"]


def _word60(out: Path) -> list[Path]:
    _similarity_fixture(out, "word60", groups=4, per_group=15, dims=10, seed=600317, noise=0.15)
    _write_json(
        out / "word60.json",
        {
            "matrix": "word60.csv",
            "out": "word60.svg",
            "method": "pam",
            "n_clusters_rows": 4,
            "n_clusters_cols": 4,
            "smooth_heat": True,
            "left_label": "cluster",
            "bottom_label": "cluster",
            "bottom_label_text_angle": 90,
            "legend": True,
        },
    )
    _write_json(
        out / "word60_diagnose.json",
        {
            "matrix": "word60.csv",
            "out": "word60_diagnose.csv",
            "method": "pam",
            "k_min": 2,
            "k_max": 6,
            "subsamples": 20,
            "subsample_fraction": 0.9,
        },
    )
    return [out / "word60.csv", out / "word60.json", out / "word60_diagnose.json"]


def _voxel(out: Path) -> list[Path]:
    rng = np.random.default_rng(120417)
    rows, cols = 120, 200
    sensitive = cols // 2
    img_top = rows // 2
    values = rng.normal(0.0, 0.4, size=(rows, cols))
    values[:img_top, :sensitive] += 1.2  # sensitive voxels, strong-response images
    values[img_top:, :sensitive] -= 1.2
    row_names = tuple(f"img{i + 1:03d}" for i in range(rows))
    col_names = tuple(f"v{j + 1:03d}" for j in range(cols))
    save_matrix(LabeledMatrix(values, row_names, col_names), out / "voxel.csv")

    cors = np.concatenate(
        [
            np.clip(rng.normal(0.55, 0.08, size=sensitive), -1.0, 1.0),
            np.clip(rng.normal(0.02, 0.08, size=cols - sensitive), -1.0, 1.0),
        ]
    )
    save_series(col_names, [float(c) for c in cors], out / "voxel_cor.csv")
    _write_json(
        out / "voxel.json",
        {
            "matrix": "voxel.csv",
            "out": "voxel.svg",
            "heat_pal": "rdbu",
            "n_clusters_rows": 2,
            "n_clusters_cols": 2,
            "yt": "voxel_cor.csv",
            "yt_axis_name": "Predicted vs true correlation",
            "yt_obs_col": "slategray4",
            "yt_point_alpha": 0.6,
            "left_label": "none",
            "bottom_label": "none",
            "grid_hline_col": "white",
            "grid_vline_col": "white",
            "row_title": "Validation images (120)",
            "column_title": "Voxels (200)",
            "legend": True,
        },
    )
    _write_json(
        out / "voxel_smooth.json",
        {
            "matrix": "voxel.csv",
            "out": "voxel_smooth.svg",
            "heat_pal": "rdbu",
            "n_clusters_rows": 2,
            "n_clusters_cols": 2,
            "smooth_heat": True,
            "yt": "voxel_cor.csv",
            "yt_plot_type": "boxplot",
            "yt_axis_name": "Predicted vs true correlation",
            "left_label": "none",
            "bottom_label": "none",
            "row_title": "Validation images (120)",
            "column_title": "Voxels (200)",
            "legend": True,
        },
    )
    return [out / "voxel.csv", out / "voxel_cor.csv", out / "voxel.json", out / "voxel_smooth.json"]


def _blobs30(out: Path) -> list[Path]:
    rng = np.random.default_rng(300523)
    centers = np.array([[10.0, 10.0], [20.0, 10.0], [15.0, 10.0 + 5.0 * np.sqrt(3.0)]])
    pts = np.vstack([c + rng.normal(0.0, 0.05, size=(10, 2)) for c in centers])
    names = tuple(f"p{i + 1:02d}" for i in range(30))
    save_matrix(LabeledMatrix(pts, names, ("x", "y")), out / "blobs30.csv")
    _write_json(
        out / "blobs30_diagnose.json",
        {
            "matrix": "blobs30.csv",
            "out": "blobs30_diagnose.csv",
            "method": "kmeans",
            "k_min": 2,
            "k_max": 6,
            "subsamples": 40,
            "subsample_fraction": 0.9,
        },
    )
    return [out / "blobs30.csv", out / "blobs30_diagnose.json"]


def write_fixtures(directory: str | Path) -> list[Path]:
    """Write every bundled fixture into ``directory`` (created if needed)."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    written += _organ58(out)
    written += _word35(out)
    written += _word60(out)
    written += _voxel(out)
    written += _blobs30(out)
    return written
