"""Agglomerative hierarchical clustering and dendrogram cuts.

Node dissimilarity is the hop distance on the unweighted skeleton of the
graph (disconnected pairs are set to the largest finite distance plus one),
so the merge tree reflects pure topology. Merges are fully deterministic:
distance ties are broken by the lexicographically smallest cluster-id pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, hop_distances

LINKAGES = ("single", "complete", "average")


@dataclass(frozen=True)
class Dendrogram:
    """Merge tree from agglomerative clustering.

    `merges` holds (cluster_a, cluster_b, resolution, new_cluster_id)
    tuples in merge order. Leaves are clusters 0..n-1 and merge i creates
    cluster n+i, so there are exactly n-1 merges and resolutions are
    non-decreasing.
    """

    n_leaves: int
    merges: tuple[tuple[int, int, float, int], ...]

    def __post_init__(self):
        if self.n_leaves < 2:
            raise ValueError("a dendrogram needs at least two leaves")
        if len(self.merges) != self.n_leaves - 1:
            raise ValueError(f"expected {self.n_leaves - 1} merges, got {len(self.merges)}")
        seen = set()
        prev = -np.inf
        for a, b, res, new_id in self.merges:
            if a in seen or b in seen or a == b:
                raise ValueError("each cluster may be merged away at most once")
            if res < prev:
                raise ValueError("merge resolutions must be non-decreasing")
            seen.add(a)
            seen.add(b)
            prev = res


def linkage_dendrogram(dissimilarity: np.ndarray, linkage: str = "average") -> Dendrogram:
    """Cluster a dissimilarity matrix bottom-up under the given linkage.

    Cluster distances follow the Lance-Williams updates for single,
    complete, or (size-weighted) average linkage. Ties on the minimum
    distance pick the smallest (id_a, id_b) pair, which makes the result
    reproducible on highly symmetric inputs.
    """
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}")
    d = np.array(dissimilarity, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("dissimilarity must be a square matrix")
    n = d.shape[0]
    if n < 2:
        raise ValueError("need at least two points")
    if np.max(np.abs(d - d.T)) > 1e-12 or np.any(np.diag(d) != 0):
        raise ValueError("dissimilarity must be symmetric with zero diagonal")
    if not np.all(np.isfinite(d)):
        raise ValueError("dissimilarity must be finite")

    inactive = np.inf
    np.fill_diagonal(d, inactive)
    ids = np.arange(n)          # cluster id occupying each slot
    sizes = np.ones(n)
    alive = np.ones(n, dtype=bool)
    merges = []
    for step in range(n - 1):
        dmin = d.min()
        rows, cols = np.nonzero(d == dmin)
        best_pair = None
        best_slots = None
        for i, j in zip(rows.tolist(), cols.tolist()):
            if i >= j:
                continue
            pair = (min(ids[i], ids[j]), max(ids[i], ids[j]))
            if best_pair is None or pair < best_pair:
                best_pair = pair
                best_slots = (i, j)
        i, j = best_slots
        new_id = n + step
        merges.append((best_pair[0], best_pair[1], float(dmin), new_id))

        row_i = d[i].copy()
        row_j = d[j].copy()
        if linkage == "single":
            new_row = np.minimum(row_i, row_j)
        elif linkage == "complete":
            new_row = np.maximum(row_i, row_j)
        else:
            new_row = (sizes[i] * row_i + sizes[j] * row_j) / (sizes[i] + sizes[j])
        # merged cluster reuses slot i; slot j is retired
        d[i, :] = new_row
        d[:, i] = new_row
        d[i, i] = inactive
        d[j, :] = inactive
        d[:, j] = inactive
        ids[i] = new_id
        sizes[i] += sizes[j]
        alive[j] = False
    return Dendrogram(n, tuple(merges))


def cluster(g: Graph, linkage: str = "average") -> Dendrogram:
    """Hierarchically cluster a graph by hop distance.

    Disconnected node pairs get dissimilarity (max finite hop) + 1, so
    separate components merge only at the very top of the tree.
    """
    if g.n < 2:
        raise ValueError("need at least two nodes to cluster")
    d = hop_distances(g)
    finite_max = d[np.isfinite(d)].max()
    d = np.where(np.isfinite(d), d, finite_max + 1.0)
    return linkage_dendrogram(d, linkage)


@dataclass(frozen=True)
class LayerCut:
    """A dendrogram cut at L+1 resolutions.

    sizes[l] is the cluster count of level l (strictly increasing, the
    last level being the leaves). memberships[l-1] maps each level-l
    cluster to its parent cluster at level l-1. labels[l] maps each
    original node to its cluster at level l. Clusters within a level are
    numbered by their smallest member node.
    """

    sizes: tuple[int, ...]
    memberships: tuple[np.ndarray, ...]
    labels: tuple[np.ndarray, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) < 1 or any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("sizes must be strictly increasing")
        if len(self.memberships) != len(sizes) - 1 or len(self.labels) != len(sizes):
            raise ValueError("memberships/labels do not match sizes")
        frozen_mem = []
        for level, mem in enumerate(self.memberships, start=1):
            mem = np.array(mem, dtype=int)
            if mem.shape != (sizes[level],):
                raise ValueError(f"membership at level {level} has wrong length")
            if mem.min() < 0 or mem.max() >= sizes[level - 1]:
                raise ValueError(f"membership at level {level} is out of range")
            if np.unique(mem).size != sizes[level - 1]:
                raise ValueError(f"some level-{level - 1} cluster has no children")
            mem.setflags(write=False)
            frozen_mem.append(mem)
        frozen_lab = []
        n = sizes[-1]
        for level, lab in enumerate(self.labels):
            lab = np.array(lab, dtype=int)
            if lab.shape != (n,) or np.unique(lab).size != sizes[level]:
                raise ValueError(f"labels at level {level} are inconsistent")
            lab.setflags(write=False)
            frozen_lab.append(lab)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "memberships", tuple(frozen_mem))
        object.__setattr__(self, "labels", tuple(frozen_lab))

    @property
    def levels(self) -> int:
        return len(self.sizes) - 1


def _partition_labels(dendrogram: Dendrogram, num_clusters: int) -> np.ndarray:
    """Node labels of the unique dendrogram partition with `num_clusters`
    clusters, numbered by smallest member node."""
    n = dendrogram.n_leaves
    groups: dict[int, list[int]] = {i: [i] for i in range(n)}
    for a, b, _res, new_id in dendrogram.merges[: n - num_clusters]:
        groups[new_id] = groups.pop(a) + groups.pop(b)
    clusters = sorted(groups.values(), key=min)
    labels = np.empty(n, dtype=int)
    for idx, members in enumerate(clusters):
        labels[members] = idx
    return labels


def cut(dendrogram: Dendrogram, sizes) -> LayerCut:
    """Cut a dendrogram at the resolutions yielding the requested sizes.

    sizes must be strictly increasing and end at the leaf count; every
    count 1..n is realizable because merges are binary.
    """
    sizes = tuple(int(s) for s in sizes)
    n = dendrogram.n_leaves
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    if sizes[-1] != n:
        raise ValueError(f"last size must equal the leaf count {n}")
    if sizes[0] < 1:
        raise ValueError("sizes must be positive")
    labels = [_partition_labels(dendrogram, s) for s in sizes]
    memberships = []
    for level in range(1, len(sizes)):
        fine, coarse = labels[level], labels[level - 1]
        mem = np.full(sizes[level], -1, dtype=int)
        for node in range(n):
            c = fine[node]
            if mem[c] == -1:
                mem[c] = coarse[node]
            elif mem[c] != coarse[node]:
                raise AssertionError("dendrogram cut is not nested")
        memberships.append(mem)
    return LayerCut(sizes, tuple(memberships), tuple(labels))


def default_sizes(n: int, levels: int, coarsest: int = 4) -> tuple[int, ...]:
    """Geometric size profile from `coarsest` up to n over `levels` steps."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if not 1 <= coarsest < n:
        raise ValueError("need 1 <= coarsest < n")
    sizes = []
    for level in range(levels + 1):
        value = round(coarsest * (n / coarsest) ** (level / levels))
        if sizes:
            value = max(value, sizes[-1] + 1)
        sizes.append(value)
    if sizes[-1] != n:
        raise ValueError(f"cannot fit {levels} strictly increasing levels into {n} nodes")
    return tuple(sizes)
