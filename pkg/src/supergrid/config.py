"""Run configuration: a single JSON document whose keys are snake_case forms
of the figure arguments (heat.pal -> heat_pal), plus pipeline keys for input
paths, clustering, smoothing, and diagnostics.

Validation reports the offending field path in every message; the CLI turns
those into exit code 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any

from .errors import ConfigError
from .palettes import PALETTES

PLOT_TYPE_KEYS = ("scatter", "scatterline", "smooth", "bar", "line", "boxplot", "dendrogram")


@dataclass
class RunConfig:
    # inputs / outputs
    matrix: str | None = None
    out: str | None = None
    seed: int | None = None
    # clustering
    method: str = "kmeans"
    linkage: str = "complete"
    restarts: int = 10
    max_iter: int = 100
    membership_rows: str | None = None
    n_clusters_rows: int | None = None
    row_dendrogram: bool = False
    order_rows: Any = None
    membership_cols: str | None = None
    n_clusters_cols: int | None = None
    col_dendrogram: bool = False
    order_cols: Any = None
    # smoothing
    smooth_heat: bool = False
    smooth_stat: str = "median"
    # heatmap colors
    heat_pal: Any = "viridis"
    heat_pal_breaks: list[float] | None = None
    heat_na_col: str = "white"
    # top series
    yt: str | None = None
    yt_plot_type: str = "scatter"
    yt_axis_name: str = ""
    yt_obs_col: Any = None
    yt_bar_col: Any = None
    yt_point_alpha: float = 1.0
    # right series
    yr: str | None = None
    yr_matrix_column: str | None = None
    yr_plot_type: str = "scatter"
    yr_axis_name: str = ""
    yr_obs_col: Any = None
    yr_bar_col: Any = None
    yr_point_alpha: float = 1.0
    # labels
    left_label: str = "variable"
    bottom_label: str = "variable"
    left_label_col: Any = None
    bottom_label_col: Any = None
    left_label_alpha: float = 1.0
    bottom_label_alpha: float = 1.0
    left_label_text_angle: float = 0.0
    bottom_label_text_angle: float = 0.0
    left_label_text_alignment: str = "center"
    bottom_label_text_alignment: str = "center"
    # grid / titles / legend
    grid_hline_col: str | None = None
    grid_vline_col: str | None = None
    row_title: str | None = None
    column_title: str | None = None
    legend: bool = False
    # canvas
    width: float = 800.0
    height: float = 600.0
    label_size: float = 11.0
    title_size: float = 14.0
    # diagnostics
    k_min: int = 2
    k_max: int = 6
    subsamples: int = 100
    subsample_fraction: float = 0.9


_FIELD_NAMES = {f.name for f in fields(RunConfig)}

_ENUMS = {
    "method": ("kmeans", "pam"),
    "linkage": ("single", "complete", "average"),
    "smooth_stat": ("median", "mean"),
    "yt_plot_type": PLOT_TYPE_KEYS,
    "yr_plot_type": PLOT_TYPE_KEYS,
    "left_label": ("variable", "cluster", "none"),
    "bottom_label": ("variable", "cluster", "none"),
    "left_label_text_alignment": ("left", "center", "right"),
    "bottom_label_text_alignment": ("left", "center", "right"),
}

_STR_OR_NONE = (
    "matrix",
    "out",
    "membership_rows",
    "membership_cols",
    "yt",
    "yr",
    "yr_matrix_column",
    "heat_na_col",
    "grid_hline_col",
    "grid_vline_col",
    "row_title",
    "column_title",
    "yt_axis_name",
    "yr_axis_name",
)
_BOOLS = ("row_dendrogram", "col_dendrogram", "smooth_heat", "legend")
_NUMBERS = (
    "yt_point_alpha",
    "yr_point_alpha",
    "left_label_alpha",
    "bottom_label_alpha",
    "left_label_text_angle",
    "bottom_label_text_angle",
    "width",
    "height",
    "label_size",
    "title_size",
    "subsample_fraction",
)
_INTS = (
    "seed",
    "restarts",
    "max_iter",
    "n_clusters_rows",
    "n_clusters_cols",
    "k_min",
    "k_max",
    "subsamples",
)
_COLOR_OR_LIST = ("yt_obs_col", "yt_bar_col", "yr_obs_col", "yr_bar_col", "left_label_col", "bottom_label_col")


def _type_name(v: Any) -> str:
    return {bool: "boolean", int: "integer", float: "number", str: "string", list: "list", dict: "object", type(None): "null"}.get(type(v), type(v).__name__)


def validate_config(raw: dict[str, Any]) -> RunConfig:
    """Check one JSON object against the schema and return a RunConfig."""
    if not isinstance(raw, dict):
        raise ConfigError(f"config root: expected object, got {_type_name(raw)}")
    for key in raw:
        if key not in _FIELD_NAMES:
            raise ConfigError(f"{key}: unknown config key")

    cfg_kwargs: dict[str, Any] = {}
    for key, value in raw.items():
        if value is None:
            continue  # JSON null means "use the default"
        cfg_kwargs[key] = _check_field(key, value)
    cfg = RunConfig(**cfg_kwargs)
    _cross_checks(cfg)
    return _normalize(cfg)


def _check_field(key: str, value: Any) -> Any:
    if key in _ENUMS:
        if not isinstance(value, str) or value not in _ENUMS[key]:
            raise ConfigError(f"{key}: expected one of {', '.join(_ENUMS[key])}, got {value!r}")
        return value
    if key in _STR_OR_NONE:
        if not isinstance(value, str):
            raise ConfigError(f"{key}: expected string, got {_type_name(value)}")
        return value
    if key in _BOOLS:
        if not isinstance(value, bool):
            raise ConfigError(f"{key}: expected boolean, got {_type_name(value)}")
        return value
    if key in _INTS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key}: expected integer, got {_type_name(value)}")
        return value
    if key in _NUMBERS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: expected number, got {_type_name(value)}")
        return float(value)
    if key in _COLOR_OR_LIST:
        if isinstance(value, str):
            return value
        if isinstance(value, list) and all(isinstance(c, str) for c in value) and value:
            return value
        raise ConfigError(f"{key}: expected color string or list of colors, got {_type_name(value)}")
    if key == "heat_pal":
        if isinstance(value, str):
            if value not in PALETTES:
                raise ConfigError(
                    f"heat_pal: unknown palette name {value!r}; "
                    f"expected one of {', '.join(sorted(PALETTES))} or a color list"
                )
            return value
        if isinstance(value, list) and len(value) >= 2 and all(isinstance(c, str) for c in value):
            return value
        raise ConfigError("heat_pal: expected a palette name or a list of at least 2 colors")
    if key == "heat_pal_breaks":
        if isinstance(value, list) and all(
            isinstance(b, (int, float)) and not isinstance(b, bool) for b in value
        ):
            return [float(b) for b in value]
        raise ConfigError(f"heat_pal_breaks: expected list of numbers, got {_type_name(value)}")
    if key in ("order_rows", "order_cols"):
        if isinstance(value, str) and value in ("mean_asc", "mean_desc"):
            return value
        if isinstance(value, list) and all(
            isinstance(i, int) and not isinstance(i, bool) for i in value
        ):
            return value
        raise ConfigError(
            f"{key}: expected 'mean_asc', 'mean_desc', or a list of integer indices, "
            f"got {_type_name(value)}"
        )
    raise ConfigError(f"{key}: unknown config key")


def _cross_checks(cfg: RunConfig) -> None:
    for axis, mem, count, dend in (
        ("rows", cfg.membership_rows, cfg.n_clusters_rows, cfg.row_dendrogram),
        ("cols", cfg.membership_cols, cfg.n_clusters_cols, cfg.col_dendrogram),
    ):
        chosen = sum((mem is not None, count is not None, bool(dend)))
        if chosen > 1:
            raise ConfigError(
                f"membership_{axis}: choose at most one of membership path, "
                f"cluster count, or dendrogram for the {axis} axis"
            )
    if cfg.row_dendrogram and cfg.order_rows is not None:
        raise ConfigError("order_rows: a row dendrogram already fixes the row order")
    if cfg.col_dendrogram and cfg.order_cols is not None:
        raise ConfigError("order_cols: a column dendrogram already fixes the column order")
    if cfg.yr is not None and cfg.yr_matrix_column is not None:
        raise ConfigError("yr: give either a series file or yr_matrix_column, not both")
    for key in ("n_clusters_rows", "n_clusters_cols"):
        value = getattr(cfg, key)
        if value is not None and value < 1:
            raise ConfigError(f"{key}: must be at least 1, got {value}")
    if not 0.0 < cfg.subsample_fraction <= 1.0:
        raise ConfigError(f"subsample_fraction: must lie in (0, 1], got {cfg.subsample_fraction}")
    if cfg.k_min > cfg.k_max:
        raise ConfigError(f"k_min: {cfg.k_min} exceeds k_max {cfg.k_max}")
    if cfg.k_min < 2:
        raise ConfigError(f"k_min: must be at least 2, got {cfg.k_min}")
    if cfg.subsamples < 2:
        raise ConfigError(f"subsamples: must be at least 2, got {cfg.subsamples}")


def _normalize(cfg: RunConfig) -> RunConfig:
    # a "dendrogram" adjacent plot is the dendrogram flag in disguise
    if cfg.yt_plot_type == "dendrogram":
        if cfg.yt is not None:
            raise ConfigError("yt: dendrogram panels carry no series values")
        cfg.yt_plot_type = "scatter"
        cfg.col_dendrogram = True
        _cross_checks(cfg)
    if cfg.yr_plot_type == "dendrogram":
        if cfg.yr is not None or cfg.yr_matrix_column is not None:
            raise ConfigError("yr: dendrogram panels carry no series values")
        cfg.yr_plot_type = "scatter"
        cfg.row_dendrogram = True
        _cross_checks(cfg)
    return cfg


def load_config(path: str | Path) -> dict[str, Any]:
    """Read the raw JSON object (validation happens after overrides merge)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path}: expected a JSON object at the top level")
    return raw


def apply_overrides(raw: dict[str, Any], overrides: dict[str, str]) -> dict[str, Any]:
    """Merge --key=value overrides; values parse as JSON, else literal strings."""
    merged = dict(raw)
    for key, text in overrides.items():
        if key not in _FIELD_NAMES:
            raise ConfigError(f"{key}: unknown config key")
        try:
            merged[key] = json.loads(text)
        except json.JSONDecodeError:
            merged[key] = text
    return merged
