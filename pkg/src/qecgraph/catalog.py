"""Deterministic graph catalogs used by the verification harness and the tests."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .graph import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    empty_graph,
    is_connected,
)

__all__ = [
    "describe",
    "all_graphs",
    "connected_graphs",
    "random_connected_graphs",
    "regular_operands",
    "multipartite_specs",
]


def describe(g: Graph) -> str:
    """Short text label: the graph's own label, else ``G<n>[u-v ...]``."""
    if g.label:
        return g.label
    if g.n == 1:
        return "K1"
    return f"G{g.n}[" + " ".join(f"{u}-{v}" for u, v in g.edges()) + "]"


def _canonical(a: np.ndarray, perms: np.ndarray) -> bytes:
    stacked = a[perms[:, :, None], perms[:, None, :]].reshape(len(perms), -1)
    packed = np.packbits(stacked, axis=1)
    best = min(range(len(perms)), key=lambda i: packed[i].tobytes())
    return packed[best].tobytes()


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of graphs on n vertices.

    Brute force over edge subsets and vertex permutations; fine for n <= 5.
    """
    if n < 1:
        raise ValueError("n must be positive")
    pairs = list(itertools.combinations(range(n), 2))
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    seen = {}
    for mask in range(1 << len(pairs)):
        a = np.zeros((n, n), dtype=bool)
        for bit, (u, v) in enumerate(pairs):
            if mask >> bit & 1:
                a[u, v] = a[v, u] = True
        key = _canonical(a, perms)
        if key not in seen:
            seen[key] = Graph(a)
    graphs = sorted(seen.values(), key=lambda g: (g.num_edges, g.adj.tobytes()))
    return tuple(graphs)


@lru_cache(maxsize=None)
def connected_graphs(max_n: int, min_n: int = 1) -> tuple[Graph, ...]:
    """All connected graphs with min_n <= n <= max_n, up to isomorphism."""
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(g for g in all_graphs(n) if is_connected(g))
    return tuple(out)


def random_connected_graphs(count: int = 20, max_n: int = 7, seed: int = 0, min_n: int = 2,
                            p: float = 0.5) -> list[Graph]:
    """``count`` connected G(n, p) samples, n uniform in [min_n, max_n]."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(min_n, max_n + 1))
        upper = np.triu(rng.random((n, n)) < p, 1)
        g = Graph(upper | upper.T)
        if is_connected(g):
            out.append(g)
    return out


def regular_operands() -> list[Graph]:
    """Regular left operands of the join catalog."""
    return [
        empty_graph(1),
        empty_graph(2),
        empty_graph(3),
        cycle(3),
        cycle(4),
        cycle(5),
        cycle(6),
        complete(2),
        complete(3),
        complete(4),
        complete_bipartite(2, 2),
    ]


def multipartite_specs(max_k: int = 3, max_part: int = 3) -> list[tuple[int, ...]]:
    """Part-size multisets (non-increasing tuples) with 2 <= k <= max_k."""
    out = []
    for k in range(2, max_k + 1):
        for parts in itertools.combinations_with_replacement(range(max_part, 0, -1), k):
            out.append(tuple(parts))
    return out
