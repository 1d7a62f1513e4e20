"""Cluster-quality diagnostics: cosine-silhouette widths, pair-based Jaccard
similarity between partitions, and subsampling stability curves for choosing
the number of clusters.

The silhouette here is the unnormalized cosine variant: a(i) averages the
distances from i over its whole cluster (self term included, divisor |C_i|),
b(i) is the lowest mean distance to any other cluster, and sil(i) = b - a
with no max(a, b) denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cluster import DistanceMatrix, Membership, cosine_distance_matrix, kmeans, pam
from .errors import DataError
from .matrix import LabeledMatrix

STABILITY_METHODS = ("kmeans", "pam")


@dataclass(frozen=True)
class SilhouetteReport:
    """Per-object a/b/sil values plus per-cluster and overall means."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    sil: tuple[float, ...]
    cluster_mean_sil: tuple[float, ...]
    mean_sil: float


@dataclass(frozen=True)
class StabilityReport:
    """Stability summary for one candidate k."""

    k: int
    subsample_count: int
    subsample_fraction: float
    mean_pairwise_jaccard: float
    mean_silhouette: float

    def __post_init__(self) -> None:
        if self.subsample_count < 2:
            raise DataError(f"need at least 2 subsamples, got {self.subsample_count}")
        if not 0.0 <= self.mean_pairwise_jaccard <= 1.0:
            raise DataError(f"mean jaccard {self.mean_pairwise_jaccard} outside [0, 1]")


def silhouette(d: DistanceMatrix, mem: Membership) -> SilhouetteReport:
    """Cosine-silhouette widths sil(i) = b(i) - a(i) under the given distances.

    a(i) is the mean distance from i to its own cluster with the zero self
    term included (divide by |C_i|); b(i) the smallest mean distance to any
    other cluster. Needs k >= 2, otherwise b is undefined.
    """
    if mem.k < 2:
        raise DataError(f"silhouette needs at least 2 clusters, got k={mem.k}")
    if mem.n != d.n:
        raise DataError(f"membership covers {mem.n} objects, distances {d.n}")
    labels = np.asarray(mem.labels)
    onehot = np.zeros((d.n, mem.k))
    onehot[np.arange(d.n), labels] = 1.0
    sums = d.d @ onehot
    counts = onehot.sum(axis=0)
    means = sums / counts[None, :]
    a = means[np.arange(d.n), labels]
    others = means.copy()
    others[np.arange(d.n), labels] = np.inf
    b = others.min(axis=1)
    sil = b - a
    cluster_means = tuple(float(sil[labels == c].mean()) for c in range(mem.k))
    return SilhouetteReport(
        a=tuple(float(v) for v in a),
        b=tuple(float(v) for v in b),
        sil=tuple(float(v) for v in sil),
        cluster_mean_sil=cluster_means,
        mean_sil=float(sil.mean()),
    )


def _pair_count(sizes: Iterable[int]) -> int:
    return sum(s * (s - 1) // 2 for s in sizes)


def _jaccard_from_labels(la: Sequence[int], lb: Sequence[int]) -> float:
    ca: dict[int, int] = {}
    cb: dict[int, int] = {}
    joint: dict[tuple[int, int], int] = {}
    for x, y in zip(la, lb):
        ca[x] = ca.get(x, 0) + 1
        cb[y] = cb.get(y, 0) + 1
        joint[(x, y)] = joint.get((x, y), 0) + 1
    pa = _pair_count(ca.values())
    pb = _pair_count(cb.values())
    inter = _pair_count(joint.values())
    union = pa + pb - inter
    return 1.0 if union == 0 else inter / union


def jaccard(mem_a: Membership, mem_b: Membership, shared: Iterable[int]) -> float:
    """Jaccard similarity of the co-clustered pair sets restricted to ``shared``.

    P_x is the set of unordered index pairs placed in one cluster by
    membership x; J = |P_a and P_b| / |P_a or P_b|, defined as 1 when both
    pair sets are empty (all singletons).
    """
    idx = sorted(set(int(i) for i in shared))
    if len(idx) < 2:
        raise DataError(f"need at least 2 shared indices, got {len(idx)}")
    for name, mem in (("first", mem_a), ("second", mem_b)):
        if idx[0] < 0 or idx[-1] >= mem.n:
            raise DataError(f"shared indices outside the {name} membership (n={mem.n})")
    la = [mem_a.labels[i] for i in idx]
    lb = [mem_b.labels[i] for i in idx]
    return _jaccard_from_labels(la, lb)


def _derive_seed(*parts: int) -> int:
    seq = np.random.SeedSequence([int(p) % (2**63) for p in parts])
    return int(seq.generate_state(1, np.uint64)[0])


def stability_curve(
    m: LabeledMatrix,
    k_range: Iterable[int],
    method: str = "kmeans",
    subsamples: int = 100,
    fraction: float = 0.9,
    seed: int = 0,
    restarts: int = 10,
) -> list[StabilityReport]:
    """Jaccard-stability and mean-silhouette curves over candidate k values.

    For every k, the same ``subsamples`` seeded index sets (size
    ceil(fraction * n), drawn without replacement) are clustered; the report
    averages pairwise Jaccard similarity over all subsample pairs (restricted
    to each pair's shared indices) and the cosine-silhouette over subsamples.
    PAM clusters on the cosine distance matrix of each subsample; kmeans on
    raw coordinates. Silhouettes always use cosine distance.
    """
    if method not in STABILITY_METHODS:
        raise DataError(f"unknown method {method!r}; expected one of {STABILITY_METHODS}")
    if not 0.0 < fraction <= 1.0:
        raise DataError(f"fraction must lie in (0, 1], got {fraction}")
    if subsamples < 2:
        raise DataError(f"need at least 2 subsamples, got {subsamples}")
    ks = [int(k) for k in k_range]
    if not ks:
        raise DataError("k_range is empty")
    n = m.n_rows
    k_cap = int(np.floor(fraction * n))
    for k in ks:
        if not 2 <= k <= k_cap:
            raise DataError(f"k={k} outside [2, {k_cap}] for fraction={fraction}, n={n}")
    size = int(np.ceil(fraction * n))

    index_sets: list[np.ndarray] = []
    sub_matrices: list[LabeledMatrix] = []
    sub_dists: list[DistanceMatrix] = []
    for s in range(subsamples):
        rng = np.random.default_rng([_derive_seed(seed, s)])
        idx = np.sort(rng.choice(n, size=size, replace=False))
        index_sets.append(idx)
        sub = LabeledMatrix(
            m.values[idx, :].copy(),
            tuple(m.row_names[i] for i in idx),
            m.col_names,
        )
        sub_matrices.append(sub)
        sub_dists.append(cosine_distance_matrix(sub))

    reports = []
    for k in ks:
        labelings: list[np.ndarray] = []
        sils: list[float] = []
        for s in range(subsamples):
            if method == "kmeans":
                mem = kmeans(sub_matrices[s], k, seed=_derive_seed(seed, k, s), restarts=restarts)
            else:
                mem = pam(sub_dists[s], k)
            labelings.append(np.asarray(mem.labels))
            sils.append(silhouette(sub_dists[s], mem).mean_sil)
        total = 0.0
        pairs = 0
        for i in range(subsamples):
            for j in range(i + 1, subsamples):
                shared = np.intersect1d(index_sets[i], index_sets[j], assume_unique=True)
                la = labelings[i][np.searchsorted(index_sets[i], shared)]
                lb = labelings[j][np.searchsorted(index_sets[j], shared)]
                total += _jaccard_from_labels(la.tolist(), lb.tolist())
                pairs += 1
        reports.append(
            StabilityReport(
                k=k,
                subsample_count=subsamples,
                subsample_fraction=fraction,
                mean_pairwise_jaccard=total / pairs,
                mean_silhouette=float(np.mean(sils)),
            )
        )
    return reports
