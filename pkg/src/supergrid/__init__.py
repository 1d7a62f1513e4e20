"""supergrid: extendable heatmaps for complex data.

A matrix heatmap augmented with cluster structure, within-cluster smoothing,
dendrograms, label panes, and adjacent statistical panels, plus the cluster
diagnostics (cosine silhouette, Jaccard subsampling stability) used to choose
and evaluate clusterings. Figures render to deterministic standalone SVG.
"""

from .cluster import (
    CosineSimilarityMatrix,
    Dendrogram,
    DistanceMatrix,
    Membership,
    cosine_distance,
    cosine_distance_matrix,
    cosine_similarity,
    cut_dendrogram,
    hcluster,
    kmeans,
    load_membership,
    pam,
    save_membership,
)
from .diagnostics import SilhouetteReport, StabilityReport, jaccard, silhouette, stability_curve
from .errors import ConfigError, DataError, SupergridError
from .layout import FigureSpec, PanelLayout, axis_map, compute_layout, dendrogram_geometry
from .matrix import (
    AdjacentSeries,
    LabeledMatrix,
    MissingCell,
    Ordering,
    apply_ordering,
    load_matrix,
    load_series,
    order_by_row_mean,
    save_matrix,
    save_series,
    transpose,
)
from .render import BoxplotStats, ColorScale, boxplot_stats, map_color, render_scene
from .smoothing import SmoothedMatrix, expand_to_cells, identity_membership, smooth_by_cluster

__version__ = "0.1.0"

__all__ = [
    "AdjacentSeries",
    "BoxplotStats",
    "ColorScale",
    "ConfigError",
    "CosineSimilarityMatrix",
    "DataError",
    "Dendrogram",
    "DistanceMatrix",
    "FigureSpec",
    "LabeledMatrix",
    "Membership",
    "MissingCell",
    "Ordering",
    "PanelLayout",
    "SilhouetteReport",
    "SmoothedMatrix",
    "StabilityReport",
    "SupergridError",
    "apply_ordering",
    "axis_map",
    "boxplot_stats",
    "compute_layout",
    "cosine_distance",
    "cosine_distance_matrix",
    "cosine_similarity",
    "cut_dendrogram",
    "dendrogram_geometry",
    "expand_to_cells",
    "hcluster",
    "identity_membership",
    "jaccard",
    "kmeans",
    "load_matrix",
    "load_membership",
    "load_series",
    "map_color",
    "order_by_row_mean",
    "pam",
    "render_scene",
    "save_matrix",
    "save_membership",
    "save_series",
    "silhouette",
    "smooth_by_cluster",
    "stability_curve",
    "transpose",
    "__version__",
]
