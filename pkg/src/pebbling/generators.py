"""Small-graph enumeration and seeded random graphs for the experiment scans.

Isomorphism classes are generated by vertex extension: every graph on n
vertices is some graph on n-1 vertices plus one vertex, so extending each class
representative by every neighbor subset and keeping one graph per canonical
form is exhaustive. Canonical forms come from colour refinement with
individualization, which is plenty for n <= 8.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Optional

from .graph import Graph, is_connected, iter_pairs, min_degree


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on ``n`` vertices (2**C(n,2) of them)."""
    pairs = list(iter_pairs(n))
    for bits in range(1 << len(pairs)):
        yield Graph(n, (p for i, p in enumerate(pairs) if bits >> i & 1))


def connected_labeled_graphs(n: int) -> Iterator[Graph]:
    return (g for g in labeled_graphs(n) if is_connected(g))


def _ranks(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(adj: tuple[frozenset[int], ...], colors: list[int]) -> list[int]:
    while True:
        keys = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        new = _ranks(keys)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """An isomorphism-invariant key: equal keys iff isomorphic graphs."""
    adj = g.adjacency
    best: list = []

    def leaf(colors: list[int]) -> None:
        code = tuple(sorted(tuple(sorted((colors[u], colors[v]))) for u, v in g.edges))
        if not best or code < best[0]:
            best[:] = [code]

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        if len(set(colors)) == g.n:
            leaf(colors)
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        # first non-singleton cell by colour; the choice only has to be invariant
        target = min(c for c, s in sizes.items() if s > 1)
        for v in range(g.n):
            if colors[v] == target:
                search(_ranks([(c, 0 if x == v else 1) for x, c in enumerate(colors)]))

    if g.n:
        search([0] * g.n)
    else:
        best.append(())
    return g.n, best[0]


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    seen: dict = {}
    for base in _classes(n - 1):
        for subset in range(1 << (n - 1)):
            edges = list(base.edges) + [(v, n - 1) for v in range(n - 1) if subset >> v & 1]
            g = Graph(n, edges)
            key = canonical_form(g)
            if key not in seen:
                seen[key] = g
    return tuple(seen[k] for k in sorted(seen))


def graph_classes(n: int, *, connected: bool = True) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices, in a fixed order."""
    return [g for g in _classes(n) if not connected or is_connected(g)]


def random_connected_graph(
    n: int, rng: random.Random, *, p: float = 0.5, min_deg: int = 0, max_attempts: int = 1_000_000
) -> Graph:
    """Rejection sampling from G(n, p) conditioned on connectivity and min degree."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if min_deg > n - 1:
        raise ValueError(f"min degree {min_deg} impossible on {n} vertices")
    pairs = list(iter_pairs(n))
    for _ in range(max_attempts):
        g = Graph(n, (e for e in pairs if rng.random() < p))
        if is_connected(g) and min_degree(g) >= min_deg:
            return g
    raise RuntimeError(f"no graph accepted after {max_attempts} attempts")


def random_connected_graphs(
    count: int, orders: tuple[int, ...], seed: int, *, min_deg: Optional[int] = None
) -> list[Graph]:
    """``count`` seeded samples, cycling through ``orders``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = orders[i % len(orders)]
        out.append(random_connected_graph(n, rng, min_deg=min_deg or 0))
    return out
