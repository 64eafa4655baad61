"""Immutable simple undirected graphs on vertices ``0..n-1``.

Distances are computed once by BFS and cached on the instance; the weight
pruner reads them in its innermost loop.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from functools import cached_property
from typing import Iterable, Iterator

INF = math.inf


class GraphFormatError(ValueError):
    """Raised for malformed edge-list text. ``line`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class Graph:
    """A simple undirected graph with dense integer labels.

    Instances are never mutated after ``__init__``; the distance table and a few
    derived views are cached lazily.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"order must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adjacency: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.edges: tuple[tuple[int, int], ...] = tuple(
            sorted((u, v) for u in range(n) for v in adj[u] if u < v)
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def sorted_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor lists in ascending order (the search loops iterate these)."""
        return tuple(tuple(sorted(a)) for a in self.adjacency)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in a) for a in self.adjacency)

    @cached_property
    def distances(self) -> tuple[tuple[float, ...], ...]:
        return tuple(tuple(bfs_distances(self, s)) for s in range(self.n))

    @cached_property
    def fingerprint(self) -> int:
        """64-bit integer digest of the order and sorted edge list."""
        text = f"{self.n};" + ";".join(f"{u},{v}" for u, v in self.edges)
        return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")

    def to_edge_list(self) -> str:
        lines = [f"n {self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if dist[u] == INF:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def all_pairs_distances(g: Graph) -> tuple[tuple[float, ...], ...]:
    """Hop distances for every ordered pair; ``INF`` marks unreachable pairs."""
    return g.distances


def min_degree(g: Graph) -> int:
    if g.n < 1:
        raise ValueError("min_degree needs at least one vertex")
    return min(len(a) for a in g.adjacency)


def max_degree(g: Graph) -> int:
    if g.n < 1:
        raise ValueError("max_degree needs at least one vertex")
    return max(len(a) for a in g.adjacency)


def diameter(g: Graph) -> float:
    """Largest finite distance, or ``INF`` when ``g`` is disconnected."""
    if g.n < 1:
        raise ValueError("diameter needs at least one vertex")
    return max(max(row) for row in g.distances)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return INF not in g.distances[0]


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for order {g.n}")
    return g.adjacency[v]


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    result = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [v for v, dv in enumerate(g.distances[s]) if dv != INF]
        for v in comp:
            seen[v] = True
        result.append(comp)
    return result


def induced_subgraph(g: Graph, vertices: list[int]) -> Graph:
    """Subgraph on ``vertices`` relabeled to ``0..len-1`` in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(vertices), edges)


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n <count>`` header plus ``u v`` lines format.

    Blank lines and ``#`` comments are ignored. Duplicate edges collapse.
    """
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if n is not None:
                raise GraphFormatError("duplicate 'n' header", lineno)
            if len(tokens) != 2:
                raise GraphFormatError("header must be 'n <count>'", lineno)
            n = _parse_int(tokens[1], lineno)
            continue
        if n is None:
            raise GraphFormatError("edge before 'n <count>' header", lineno)
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = (_parse_int(t, lineno) for t in tokens)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if u >= n or v >= n:
            raise GraphFormatError(f"vertex index out of range for n={n}", lineno)
        edges.append((u, v))
    if n is None:
        raise GraphFormatError("missing 'n <count>' header")
    return Graph(n, edges)


def _parse_int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"not an integer: {token!r}", lineno) from None
    if value < 0:
        raise GraphFormatError(f"negative value: {token!r}", lineno)
    return value


def iter_pairs(n: int) -> Iterator[tuple[int, int]]:
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v
