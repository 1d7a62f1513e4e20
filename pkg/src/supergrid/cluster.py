"""Cluster producers: K-means (default), PAM with medoids, agglomerative
hierarchical clustering, and the cosine similarity/distance kernels.

All three clusterers return canonical memberships (labels renumbered by first
occurrence), so equal partitions compare equal regardless of internal label
choices. Everything is deterministic given the seed; tie-breaks are by lowest
index throughout.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DataError
from .matrix import LabeledMatrix

LINKAGES = ("single", "complete", "average")

_SYM_TOL = 1e-9


def _norm_seed(seed: int) -> int:
    return int(seed) % (2**63)


def _rng(*entropy: int) -> np.random.Generator:
    return np.random.default_rng([_norm_seed(e) for e in entropy])


def relabel_first_occurrence(labels: Sequence[int]) -> tuple[int, ...]:
    """Renumber labels by order of first appearance (canonical form)."""
    mapping: dict[int, int] = {}
    for lab in labels:
        if lab not in mapping:
            mapping[lab] = len(mapping)
    return tuple(mapping[lab] for lab in labels)


@dataclass(frozen=True)
class Membership:
    """Cluster assignment for one axis: labels[i] in 0..k-1, no empty cluster.

    ``medoid_indices`` (PAM) lists one object index per cluster, where medoid
    i carries label i. ``label_names`` are display names per cluster.
    """

    labels: tuple[int, ...]
    k: int
    medoid_indices: tuple[int, ...] | None = None
    label_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        labels = tuple(int(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if self.k < 1:
            raise DataError(f"k must be at least 1, got {self.k}")
        if not labels:
            raise DataError("membership must cover at least one object")
        seen = set(labels)
        bad = [v for v in seen if not 0 <= v < self.k]
        if bad:
            raise DataError(f"label {bad[0]} outside 0..{self.k - 1}")
        if len(seen) != self.k:
            empty = sorted(set(range(self.k)) - seen)
            raise DataError(f"cluster {empty[0]} is empty")
        if self.medoid_indices is not None:
            med = tuple(int(i) for i in self.medoid_indices)
            object.__setattr__(self, "medoid_indices", med)
            if len(med) != self.k:
                raise DataError(f"expected {self.k} medoids, got {len(med)}")
            for c, i in enumerate(med):
                if not 0 <= i < len(labels):
                    raise DataError(f"medoid index {i} out of range")
                if labels[i] != c:
                    raise DataError(f"medoid {i} has label {labels[i]}, expected {c}")
        if self.label_names is not None:
            names = tuple(str(s) for s in self.label_names)
            object.__setattr__(self, "label_names", names)
            if len(names) != self.k:
                raise DataError(f"expected {self.k} label names, got {len(names)}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.k
        for lab in self.labels:
            counts[lab] += 1
        return tuple(counts)

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.labels) == cluster)

    def with_names(self, names: Sequence[str]) -> Membership:
        return Membership(self.labels, self.k, self.medoid_indices, tuple(names))

    @classmethod
    def from_labels(cls, raw: Sequence[object]) -> Membership:
        """Build from arbitrary labels; names are the distinct raw labels in
        first-occurrence order."""
        order: dict[object, int] = {}
        for lab in raw:
            if lab not in order:
                order[lab] = len(order)
        labels = tuple(order[lab] for lab in raw)
        return cls(labels, len(order), label_names=tuple(str(lab) for lab in order))

    def permuted(self, permutation: Sequence[int]) -> Membership:
        """Membership for the reordered axis (object p[i] moves to slot i)."""
        labels = tuple(self.labels[i] for i in permutation)
        med = self.medoid_indices
        if med is not None:
            inv = {obj: slot for slot, obj in enumerate(permutation)}
            med = tuple(inv[i] for i in med)
        return Membership(labels, self.k, med, self.label_names)


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances with a zero diagonal."""

    d: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise DataError(f"distance matrix must be square, got shape {d.shape}")
        if np.abs(d - d.T).max(initial=0.0) > _SYM_TOL:
            raise DataError("distance matrix is not symmetric")
        if np.abs(np.diagonal(d)).max(initial=0.0) > _SYM_TOL:
            raise DataError("distance matrix diagonal is not zero")
        if d.min(initial=0.0) < -_SYM_TOL:
            raise DataError("distance matrix has negative entries")
        d = np.clip((d + d.T) / 2.0, 0.0, None)
        np.fill_diagonal(d, 0.0)
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.d.shape[0]


@dataclass(frozen=True)
class CosineSimilarityMatrix:
    """Symmetric cosine similarities in [-1, 1] with a unit diagonal."""

    s: np.ndarray

    def __post_init__(self) -> None:
        s = np.asarray(self.s, dtype=float)
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise DataError(f"similarity matrix must be square, got shape {s.shape}")
        if np.abs(s - s.T).max(initial=0.0) > _SYM_TOL:
            raise DataError("similarity matrix is not symmetric")
        if np.abs(s).max(initial=0.0) > 1.0 + 1e-12:
            raise DataError("similarity entries exceed [-1, 1]")
        s = np.clip((s + s.T) / 2.0, -1.0, 1.0)
        np.fill_diagonal(s, 1.0)
        s.setflags(write=False)
        object.__setattr__(self, "s", s)

    @property
    def n(self) -> int:
        return self.s.shape[0]


def cosine_similarity(m: LabeledMatrix) -> CosineSimilarityMatrix:
    """Pairwise cosine similarity of matrix rows, clamped into [-1, 1]."""
    if m.has_missing():
        raise DataError("cosine similarity requires a complete matrix (missing cells present)")
    x = m.values
    norms = np.sqrt((x * x).sum(axis=1))
    if (norms == 0.0).any():
        i = int(np.argmax(norms == 0.0))
        raise DataError(f"row {m.row_names[i]!r} (index {i}) has zero norm")
    unit = x / norms[:, None]
    s = unit @ unit.T
    return CosineSimilarityMatrix(np.clip((s + s.T) / 2.0, -1.0, 1.0))


def cosine_distance(s):
    """Angular distance arccos(s)/pi, mapping [-1, 1] onto [0, 1]."""
    return np.arccos(np.clip(s, -1.0, 1.0)) / np.pi


def cosine_distance_matrix(m: LabeledMatrix) -> DistanceMatrix:
    """Cosine distances between matrix rows (DistanceMatrix asserts shape)."""
    d = cosine_distance(cosine_similarity(m).s)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def _pairwise_sq_dists(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = (
        (x * x).sum(axis=1)[:, None]
        + (centers * centers).sum(axis=1)[None, :]
        - 2.0 * (x @ centers.T)
    )
    return np.maximum(d2, 0.0)


def _kmeans_pp_init(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    centers = np.empty((k, x.shape[1]))
    centers[0] = x[int(rng.integers(n))]
    d2 = _pairwise_sq_dists(x, centers[:1])[:, 0]
    for j in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[j] = x[idx]
        d2 = np.minimum(d2, _pairwise_sq_dists(x, centers[j : j + 1])[:, 0])
    return centers


def _lloyd(x: np.ndarray, centers: np.ndarray, max_iter: int) -> tuple[np.ndarray, float]:
    n, k = x.shape[0], centers.shape[0]
    labels = np.full(n, -1)
    prev_wcss = np.inf
    for _ in range(max_iter):
        d2 = _pairwise_sq_dists(x, centers)
        new_labels = d2.argmin(axis=1)
        assigned = d2[np.arange(n), new_labels]
        # repair empty clusters: farthest point becomes a singleton center
        for c in range(k):
            if not (new_labels == c).any():
                p = int(assigned.argmax())
                centers[c] = x[p]
                new_labels[p] = c
                assigned[p] = 0.0
        wcss = float(assigned.sum())
        assert wcss <= prev_wcss + 1e-9 * max(1.0, prev_wcss), "WCSS increased"
        prev_wcss = wcss
        if (new_labels == labels).all():
            break
        labels = new_labels
        for c in range(k):
            centers[c] = x[labels == c].mean(axis=0)
    # true WCSS of the returned partition: squared distance to cluster means
    for c in range(k):
        if (labels == c).any():
            centers[c] = x[labels == c].mean(axis=0)
    d2 = _pairwise_sq_dists(x, centers)
    return labels, float(d2[np.arange(n), labels].sum())


def kmeans(
    m: LabeledMatrix,
    k: int,
    *,
    seed: int = 0,
    restarts: int = 10,
    max_iter: int = 100,
) -> Membership:
    """Lloyd's K-means over matrix rows with k-means++ seeding.

    Runs ``restarts`` independent seeded starts and keeps the lowest
    within-cluster sum of squares (ties to the lower restart index). Output
    labels are canonical (first-occurrence order), so results are fully
    reproducible for a given seed.
    """
    if m.has_missing():
        raise DataError("kmeans requires a complete matrix (missing cells present)")
    x = m.values
    n = x.shape[0]
    if k <= 0:
        raise DataError(f"k must be positive, got {k}")
    if k > n:
        raise DataError(f"k={k} exceeds the number of objects n={n}")
    best: tuple[float, int, np.ndarray] | None = None
    for r in range(max(1, restarts)):
        centers = _kmeans_pp_init(x, k, _rng(seed, r))
        labels, wcss = _lloyd(x, centers.copy(), max_iter)
        if best is None or wcss < best[0]:
            best = (wcss, r, labels)
    assert best is not None
    if len(set(best[2].tolist())) < k:
        raise DataError(f"k={k} exceeds the number of distinct points")
    return Membership(relabel_first_occurrence(best[2]), k)


def _pam_build(d: np.ndarray, k: int) -> list[int]:
    n = d.shape[0]
    first = int(d.sum(axis=1).argmin())
    medoids = [first]
    nearest = d[:, first].copy()
    while len(medoids) < k:
        gains = np.maximum(nearest[:, None] - d, 0.0).sum(axis=0)
        gains[medoids] = -1.0
        c = int(gains.argmax())
        medoids.append(c)
        nearest = np.minimum(nearest, d[:, c])
    return medoids


def pam(d: DistanceMatrix, k: int, *, seed: int = 0) -> Membership:
    """Partitioning Around Medoids: greedy BUILD then steepest-descent SWAP.

    Each SWAP round evaluates every (medoid, non-medoid) exchange and applies
    the single best strictly cost-decreasing one; ties break lexicographically
    on (medoid index, candidate index). Objects are labeled by their nearest
    medoid, ties to the lower medoid index. ``seed`` is accepted for interface
    parity; both phases are deterministic.
    """
    del seed
    n = d.n
    if k <= 0:
        raise DataError(f"k must be positive, got {k}")
    if k > n:
        raise DataError(f"k={k} exceeds the number of objects n={n}")
    dist = d.d
    medoids = _pam_build(dist, k)

    def nearest_two(meds: list[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        cols = dist[:, meds]
        order = np.argsort(cols, axis=1, kind="stable")
        d1 = cols[np.arange(n), order[:, 0]]
        owner = np.asarray(meds)[order[:, 0]]
        d2 = cols[np.arange(n), order[:, 1]] if k > 1 else np.full(n, np.inf)
        return d1, d2, owner

    d1, d2, owner = nearest_two(medoids)
    cost = float(d1.sum())
    while True:
        in_set = np.zeros(n, dtype=bool)
        in_set[medoids] = True
        candidates = np.flatnonzero(~in_set)
        if candidates.size == 0:
            break
        # argmin picks the lowest candidate index among equals; medoids are
        # scanned in ascending object index and later ones must win strictly,
        # so ties resolve lexicographically on (medoid index, candidate index)
        best_cost = cost - 1e-12
        best_swap: tuple[int, int] | None = None
        for pos, mi in sorted(enumerate(medoids), key=lambda pm: pm[1]):
            base = np.where(owner == mi, d2, d1)
            new_costs = np.minimum(base[:, None], dist[:, candidates]).sum(axis=0)
            j = int(new_costs.argmin())
            if new_costs[j] < best_cost:
                best_cost = float(new_costs[j])
                best_swap = (pos, int(candidates[j]))
        if best_swap is None:
            break
        medoids[best_swap[0]] = best_swap[1]
        d1, d2, owner = nearest_two(medoids)
        cost = float(d1.sum())

    meds_sorted = sorted(medoids)
    raw = np.asarray(
        [int(np.argmin([dist[i, mm] for mm in meds_sorted])) for i in range(n)]
    )
    labels = relabel_first_occurrence(raw)
    med_by_label = [0] * k
    for pos, mm in enumerate(meds_sorted):
        med_by_label[labels[mm]] = mm
    return Membership(labels, k, medoid_indices=tuple(med_by_label))


def pam_cost(d: DistanceMatrix, mem: Membership) -> float:
    """Total distance of every object to its cluster medoid."""
    if mem.medoid_indices is None:
        raise DataError("membership has no medoids")
    meds = np.asarray(mem.medoid_indices)
    return float(d.d[np.arange(d.n), meds[np.asarray(mem.labels)]].sum())


@dataclass(frozen=True)
class Merge:
    """One agglomeration: node ids < n are leaves, n + t is the t-th merge."""

    left: int
    right: int
    height: float


@dataclass(frozen=True)
class Dendrogram:
    """Binary merge tree; ``leaf_order`` is the planar left-to-right order."""

    merges: tuple[Merge, ...]
    leaf_order: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "merges", tuple(self.merges))
        object.__setattr__(self, "leaf_order", tuple(int(i) for i in self.leaf_order))
        n = len(self.leaf_order)
        if len(self.merges) != n - 1:
            raise DataError(f"{n} leaves need {n - 1} merges, got {len(self.merges)}")
        if sorted(self.leaf_order) != list(range(n)):
            raise DataError("leaf_order is not a permutation of the leaves")
        heights = {}
        for t, mg in enumerate(self.merges):
            for child in (mg.left, mg.right):
                if child >= n + t:
                    raise DataError(f"merge {t} references a later node {child}")
                if child >= n and heights[child] > mg.height + 1e-9:
                    raise DataError("merge heights decrease along a root path")
            heights[n + t] = mg.height
        # planarity: every node's leaves occupy a contiguous leaf_order block
        pos = {leaf: i for i, leaf in enumerate(self.leaf_order)}
        spans: dict[int, tuple[int, int, int]] = {
            leaf: (pos[leaf], pos[leaf], 1) for leaf in range(n)
        }
        for t, mg in enumerate(self.merges):
            l0, l1, lc = spans[mg.left]
            r0, r1, rc = spans[mg.right]
            lo, hi, cnt = min(l0, r0), max(l1, r1), lc + rc
            if hi - lo + 1 != cnt:
                raise DataError("leaf_order is not planar for the merge tree")
            spans[n + t] = (lo, hi, cnt)

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_order)

    @property
    def max_height(self) -> float:
        return max(mg.height for mg in self.merges) if self.merges else 0.0


def hcluster(d: DistanceMatrix, linkage: str = "complete") -> Dendrogram:
    """Agglomerative clustering under single/complete/average linkage.

    Equal-distance merge candidates break ties on the smallest (id, id) pair,
    where leaves carry ids 0..n-1 and the t-th merge creates id n+t. Children
    of each merge are ordered so the side containing the smaller minimum leaf
    index comes first, which fixes the planar leaf order.
    """
    if linkage not in LINKAGES:
        raise DataError(f"unknown linkage {linkage!r}; expected one of {', '.join(LINKAGES)}")
    n = d.n
    if n < 2:
        raise DataError("hierarchical clustering needs at least 2 objects")
    dist = d.d.copy()
    ids = list(range(n))  # cluster id per live slot
    sizes = [1] * n
    min_leaf = list(range(n))
    children: dict[int, tuple[int, int]] = {}
    merges: list[Merge] = []
    live = np.ones(n, dtype=bool)
    big = np.inf
    work = dist.copy()
    np.fill_diagonal(work, big)

    for t in range(n - 1):
        masked = np.where(live[:, None] & live[None, :], work, big)
        h = masked.min()
        cand = np.argwhere(masked == h)
        # pick the pair with the smallest (id_i, id_j), i.e. lexicographic ids
        best = min(
            ((min(ids[i], ids[j]), max(ids[i], ids[j]), i, j) for i, j in cand if i < j),
        )
        _, _, a, b = best
        new_id = n + t
        ia, ib = ids[a], ids[b]
        # child with the smaller minimum leaf index is drawn first
        if min_leaf[a] <= min_leaf[b]:
            children[new_id] = (ia, ib)
        else:
            children[new_id] = (ib, ia)
        merges.append(Merge(min(ia, ib), max(ia, ib), float(h)))

        sa, sb = sizes[a], sizes[b]
        row_a, row_b = work[a], work[b]
        if linkage == "single":
            merged = np.minimum(row_a, row_b)
        elif linkage == "complete":
            merged = np.maximum(row_a, row_b)
        else:
            merged = (sa * row_a + sb * row_b) / (sa + sb)
        work[a, :] = merged
        work[:, a] = merged
        work[a, a] = big
        live[b] = False
        ids[a] = new_id
        sizes[a] = sa + sb
        min_leaf[a] = min(min_leaf[a], min_leaf[b])

    def walk(node: int, out: list[int]) -> None:
        if node < n:
            out.append(node)
            return
        left, right = children[node]
        walk(left, out)
        walk(right, out)

    order: list[int] = []
    walk(n + (n - 2), order)
    return Dendrogram(tuple(merges), tuple(order))


def cut_dendrogram(t: Dendrogram, k: int) -> Membership:
    """Remove the k-1 highest merges; components become clusters labeled in
    leaf order of first appearance."""
    n = t.n_leaves
    if not 1 <= k <= n:
        raise DataError(f"k={k} outside 1..{n}")
    kept = t.merges[: n - k]
    parent = list(range(2 * n - 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, mg in enumerate(kept):
        node = n + i
        for child in (mg.left, mg.right):
            parent[find(child)] = find(node)

    label_of_root: dict[int, int] = {}
    labels = [0] * n
    for leaf in t.leaf_order:
        root = find(leaf)
        if root not in label_of_root:
            label_of_root[root] = len(label_of_root)
        labels[leaf] = label_of_root[root]
    return Membership(tuple(labels), k)


def save_membership(mem: Membership, names: Sequence[str], path: str | Path) -> None:
    """Write (object_name, cluster_label) rows; labels use label_names when set."""
    if len(names) != mem.n:
        raise DataError(f"expected {mem.n} object names, got {len(names)}")
    label_names = mem.label_names or tuple(f"c{i + 1}" for i in range(mem.k))
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for name, lab in zip(names, mem.labels):
            writer.writerow([name, label_names[lab]])


def load_membership(path: str | Path, expected_names: Sequence[str] | None = None) -> Membership:
    """Read a two-column (object_name, cluster_label) CSV.

    Rows are positional; when ``expected_names`` is given, names must match
    position for position. Cluster ids follow first-occurrence order of the
    raw labels, which become the membership's label_names.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"membership file not found: {path}")
    names: list[str] = []
    raw: list[str] = []
    with path.open(newline="", encoding="utf-8") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row:
                continue
            if len(row) != 2:
                raise DataError(f"row {i + 1}: expected 2 fields, got {len(row)}")
            names.append(row[0].strip())
            raw.append(row[1].strip())
    if not raw:
        raise DataError(f"{path}: file is empty")
    if expected_names is not None:
        if len(names) != len(expected_names):
            raise DataError(
                f"{path}: {len(names)} membership rows for {len(expected_names)} objects"
            )
        for i, (got, want) in enumerate(zip(names, expected_names)):
            if got != want:
                raise DataError(f"{path}: row {i + 1} names {got!r}, expected {want!r}")
    return Membership.from_labels(raw)
