"""Graph containers, the stochastic block model, and on-disk formats.

Graphs are small and dense by design (hundreds to ~2000 nodes), so the
adjacency is stored as a full symmetric matrix and all algorithms work on
plain numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

SYMMETRY_TOL = 1e-12


def as_rng(seed) -> np.random.Generator:
    """Accept either a Generator or anything ``default_rng`` accepts."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph on nodes 0..n-1 with a dense adjacency matrix.

    The adjacency must be symmetric (within 1e-12), nonnegative and
    hollow (zero diagonal). ``labels`` optionally tags each node with a
    community id. Instances are immutable; the stored arrays are marked
    read-only so a Graph can be shared across concurrent computations.
    """

    adjacency: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=float)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if adj.size and np.max(np.abs(adj - adj.T)) > SYMMETRY_TOL:
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(adj) != 0.0):
            raise ValueError("self loops are not allowed (diagonal must be zero)")
        if np.any(adj < 0.0):
            raise ValueError("edge weights must be nonnegative")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        if self.labels is not None:
            lab = np.array(self.labels, dtype=int)
            if lab.shape != (adj.shape[0],):
                raise ValueError("labels must have one entry per node")
            lab.setflags(write=False)
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.adjacency)))

    def neighbors(self, i: int) -> np.ndarray:
        return np.nonzero(self.adjacency[i] > 0)[0]

    def edges(self):
        """Yield (u, v, weight) with u < v, sorted by (u, v)."""
        rows, cols = np.nonzero(np.triu(self.adjacency))
        for u, v in zip(rows.tolist(), cols.tolist()):
            yield u, v, float(self.adjacency[u, v])


@dataclass(frozen=True)
class SbmConfig:
    """Equal-sized-community stochastic block model parameters."""

    n: int
    k: int
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        if self.n % self.k != 0:
            raise ValueError(f"n={self.n} must be divisible by k={self.k}")
        if not (0.0 <= self.p_out <= self.p_in <= 1.0):
            raise ValueError("need 0 <= p_out <= p_in <= 1")


def sbm_generate(cfg: SbmConfig) -> Graph:
    """Draw an unweighted SBM graph; deterministic for a given `cfg.seed`.

    Each within-community pair is connected independently with `p_in`,
    each cross pair with `p_out`. Community labels are attached to the
    returned Graph. Disconnected draws are kept as-is.
    """
    rng = np.random.default_rng(cfg.seed)
    labels = np.repeat(np.arange(cfg.k), cfg.n // cfg.k)
    same = labels[:, None] == labels[None, :]
    probs = np.where(same, cfg.p_in, cfg.p_out)
    draw = rng.random((cfg.n, cfg.n))
    upper = np.triu(draw < probs, k=1)
    adjacency = (upper | upper.T).astype(float)
    return Graph(adjacency, labels=labels)


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian: degree matrix minus adjacency."""
    return np.diag(g.adjacency.sum(axis=1)) - g.adjacency


def hop_distances(g: Graph) -> np.ndarray:
    """All-pairs hop counts on the unweighted skeleton; inf when unreachable.

    Runs a simultaneous BFS from every node using boolean matrix products,
    which is plenty fast at the dense sizes this package targets.
    """
    n = g.n
    adj = (g.adjacency > 0).astype(np.uint8)
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    hops = 0
    while True:
        hops += 1
        nxt = ((frontier.astype(np.uint8) @ adj) > 0) & ~reached
        if not nxt.any():
            break
        dist[nxt] = hops
        reached |= nxt
        frontier = nxt
    return dist


def connected_components(g: Graph) -> int:
    """Number of connected components."""
    reach = np.isfinite(hop_distances(g))
    # label each node by the smallest node it can reach
    return len(np.unique(reach.argmax(axis=1)))


# ---------------------------------------------------------------------------
# File formats.
#
# Edge list: one edge per line, "u v" or "u v w" with 0-indexed integer node
# ids; the weight defaults to 1.0; lines starting with '#' are comments;
# undirected, so each edge appears exactly once. Signal: one decimal per line.
# ---------------------------------------------------------------------------


def load_edge_list(path) -> Graph:
    """Parse an edge-list file into a Graph.

    Raises ValueError with the offending line number on malformed lines,
    self loops, nonpositive weights, or duplicated edges.
    """
    path = Path(path)
    edges: dict[tuple[int, int], float] = {}
    max_node = -1
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"{path}:{lineno}: expected 'u v' or 'u v w', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        if u < 0 or v < 0:
            raise ValueError(f"{path}:{lineno}: node ids must be nonnegative")
        if u == v:
            raise ValueError(f"{path}:{lineno}: self loop on node {u}")
        if not w > 0:
            raise ValueError(f"{path}:{lineno}: weight must be positive, got {w}")
        key = (min(u, v), max(u, v))
        if key in edges:
            raise ValueError(f"{path}:{lineno}: duplicate edge {key[0]} {key[1]}")
        edges[key] = w
        max_node = max(max_node, u, v)
    if max_node < 0:
        raise ValueError(f"{path}: no edges found")
    n = max_node + 1
    adjacency = np.zeros((n, n))
    for (u, v), w in edges.items():
        adjacency[u, v] = adjacency[v, u] = w
    return Graph(adjacency)


def save_edge_list(g: Graph, path) -> None:
    """Write a Graph in the edge-list format; output bytes are canonical."""
    lines = []
    for u, v, w in g.edges():
        lines.append(f"{u} {v}" if w == 1.0 else f"{u} {v} {w!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_signal(path, n: int | None = None) -> np.ndarray:
    """Read a graph signal (one value per line); optionally check its length."""
    path = Path(path)
    values = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
    x = np.array(values)
    if n is not None and x.shape != (n,):
        raise ValueError(f"{path}: signal has length {x.size}, expected {n}")
    return x


def save_signal(x: np.ndarray, path) -> None:
    Path(path).write_text("\n".join(repr(float(v)) for v in np.asarray(x)) + "\n")
