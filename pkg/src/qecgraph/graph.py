"""Simple undirected graphs, named families, joins and Cartesian products."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "Graph",
    "MultipartiteSpec",
    "DisconnectedGraph",
    "BadEdgeList",
    "complete",
    "complete_multipartite",
    "complete_bipartite",
    "path",
    "cycle",
    "empty_graph",
    "from_edge_list",
    "parse_edge_list",
    "read_edge_list",
    "join",
    "cartesian",
    "distance_matrix",
    "is_connected",
    "regularity",
]


class DisconnectedGraph(ValueError):
    """Raised when a shortest-path distance (and hence QEC) is undefined."""


class BadEdgeList(ValueError):
    pass


class Graph:
    """Immutable simple graph stored as a read-only boolean adjacency matrix.

    Vertices are ``0..n-1``.  The label is cosmetic and ignored by ``==``.
    """

    __slots__ = ("_adj", "label")

    def __init__(self, adj, label: Optional[str] = None):
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if a.shape[0] < 1:
            raise ValueError("a graph needs at least one vertex")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if a.diagonal().any():
            raise ValueError("self-loops are not allowed")
        a.setflags(write=False)
        self._adj = a
        self.label = label

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    def adjacency_matrix(self) -> np.ndarray:
        """Adjacency matrix as a fresh float array."""
        return self._adj.astype(float)

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self._adj, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self):
        name = self.label or "Graph"
        return f"<{name}: n={self.n}, m={self.num_edges}>"


@dataclass(frozen=True)
class MultipartiteSpec:
    """Part sizes of a complete multipartite graph K_{m_1,...,m_k}.

    ``distinct_sizes`` is strictly decreasing and ``multiplicities[p]`` counts
    how often ``distinct_sizes[p]`` occurs among the parts.
    """

    parts: tuple[int, ...]
    distinct_sizes: tuple[int, ...] = field(init=False)
    multiplicities: tuple[int, ...] = field(init=False)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if len(parts) < 2:
            raise ValueError("a complete multipartite graph needs k >= 2 parts")
        if any(p < 1 for p in parts):
            raise ValueError("part sizes must be positive")
        counts = Counter(parts)
        sizes = tuple(sorted(counts, reverse=True))
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "distinct_sizes", sizes)
        object.__setattr__(self, "multiplicities", tuple(counts[s] for s in sizes))

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def q(self) -> int:
        return len(self.distinct_sizes)

    @property
    def order(self) -> int:
        return sum(self.parts)


def _check_order(n: int, minimum: int = 1) -> int:
    if int(n) != n or n < minimum:
        raise ValueError(f"order must be an integer >= {minimum}, got {n!r}")
    return int(n)


def complete(n: int) -> Graph:
    n = _check_order(n)
    a = ~np.eye(n, dtype=bool)
    return Graph(a, label=f"K{n}")


def empty_graph(n: int) -> Graph:
    n = _check_order(n)
    return Graph(np.zeros((n, n), dtype=bool), label=f"E{n}")


def path(n: int) -> Graph:
    n = _check_order(n)
    a = np.zeros((n, n), dtype=bool)
    i = np.arange(n - 1)
    a[i, i + 1] = a[i + 1, i] = True
    return Graph(a, label=f"P{n}")


def cycle(n: int) -> Graph:
    n = _check_order(n, 3)
    a = np.zeros((n, n), dtype=bool)
    i = np.arange(n)
    a[i, (i + 1) % n] = a[(i + 1) % n, i] = True
    return Graph(a, label=f"C{n}")


def complete_multipartite(spec) -> Graph:
    """K_{m_1,...,m_k}: vertices adjacent iff they lie in different parts.

    Parts are laid out in the order given, each as a contiguous block.
    """
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(spec)
    block = np.repeat(np.arange(spec.k), spec.parts)
    a = block[:, None] != block[None, :]
    label = "Km(" + ",".join(map(str, spec.parts)) + ")"
    return Graph(a, label=label)


def complete_bipartite(m: int, n: int) -> Graph:
    g = complete_multipartite(MultipartiteSpec((_check_order(m), _check_order(n))))
    return Graph(g.adj, label=f"Kb({m},{n})")


def from_edge_list(n: int, edges: Iterable[Sequence[int]], label=None) -> Graph:
    """Build a graph from 0-based vertex pairs.

    Each pair is symmetrized; repeating an edge in either orientation is
    harmless.  Self-loops and out-of-range indices raise ``BadEdgeList``.
    """
    n = _check_order(n)
    a = np.zeros((n, n), dtype=bool)
    for e in edges:
        u, v = (int(x) for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise BadEdgeList(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise BadEdgeList(f"self-loop at vertex {u}")
        a[u, v] = a[v, u] = True
    return Graph(a, label=label)


def parse_edge_list(text: str, label=None) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format (``#`` starts a comment)."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if line:
            rows.append(line)
    if not rows:
        raise BadEdgeList("empty edge list")
    try:
        if len(rows[0]) != 2:
            raise BadEdgeList("header must be 'n m'")
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = []
        for row in rows[1:]:
            if len(row) != 2:
                raise BadEdgeList(f"expected 'u v', got {' '.join(row)!r}")
            edges.append((int(row[0]), int(row[1])))
    except ValueError as exc:
        if isinstance(exc, BadEdgeList):
            raise
        raise BadEdgeList(str(exc)) from None
    if len(edges) != m:
        raise BadEdgeList(f"header announces {m} edges, found {len(edges)}")
    if n < 1:
        raise BadEdgeList("vertex count must be positive")
    return from_edge_list(n, edges, label=label)


def read_edge_list(filename) -> Graph:
    with open(filename) as fh:
        return parse_edge_list(fh.read(), label=f"file:{filename}")


def join(g1: Graph, g2: Graph) -> Graph:
    """G1 + G2: disjoint union plus every edge between the two vertex sets.

    The vertices of ``g1`` come first.
    """
    m, n = g1.n, g2.n
    a = np.ones((m + n, m + n), dtype=bool)
    a[:m, :m] = g1.adj
    a[m:, m:] = g2.adj
    label = None
    if g1.label and g2.label:
        label = f"join({g1.label},{g2.label})"
    return Graph(a, label=label)


def cartesian(g1: Graph, g2: Graph) -> Graph:
    """G1 x G2 with vertex (u_k, v_j) at index ``k * n2 + j``."""
    a1 = g1.adj.astype(np.int8)
    a2 = g2.adj.astype(np.int8)
    a = np.kron(a1, np.eye(g2.n, dtype=np.int8)) + np.kron(np.eye(g1.n, dtype=np.int8), a2)
    label = None
    if g1.label and g2.label:
        label = f"cart({g1.label},{g2.label})"
    return Graph(a > 0, label=label)


def _bfs(adj: np.ndarray, source: int) -> np.ndarray:
    dist = np.full(adj.shape[0], -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(adj[u]):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(g: Graph) -> bool:
    return bool((_bfs(g.adj, 0) >= 0).all())


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs shortest-path lengths (integer matrix) by repeated BFS.

    Raises ``DisconnectedGraph`` if some pair is unreachable.
    """
    d = np.empty((g.n, g.n), dtype=np.int64)
    for s in range(g.n):
        d[s] = _bfs(g.adj, s)
        if (d[s] < 0).any():
            raise DisconnectedGraph(f"{g!r} is disconnected; distance matrix undefined")
    d.setflags(write=False)
    return d


def regularity(g: Graph) -> Optional[int]:
    """Common degree r if ``g`` is r-regular, else None."""
    deg = g.degrees()
    if (deg == deg[0]).all():
        return int(deg[0])
    return None
