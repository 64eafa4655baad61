"""Graph families and transformations: products, H_m, quotients, reductions."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Sequence

from .engine import Distribution, Move, PebblingError, is_restricted, is_solvable, size, stranded_vertices
from .graph import Graph, is_connected


class ConstructionError(ValueError):
    pass


def complete_graph(m: int) -> Graph:
    if m < 1:
        raise ConstructionError(f"complete graph needs m >= 1, got {m}")
    return Graph(m, ((u, v) for u in range(m) for v in range(u + 1, m)))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ConstructionError(f"path needs n >= 1, got {n}")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ConstructionError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at 0."""
    if leaves < 0:
        raise ConstructionError("star needs a non-negative leaf count")
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


@dataclass(frozen=True)
class ProductLabeling:
    """g-major flattening ``(g, h) <-> g * inner + h`` for a product graph."""

    outer: int
    inner: int

    def index(self, g: int, h: int) -> int:
        if not (0 <= g < self.outer and 0 <= h < self.inner):
            raise IndexError(f"({g}, {h}) out of range")
        return g * self.inner + h

    def pair(self, x: int) -> tuple[int, int]:
        if not 0 <= x < self.outer * self.inner:
            raise IndexError(f"{x} out of range")
        return divmod(x, self.inner)

    def fiber(self, g: int) -> range:
        return range(g * self.inner, (g + 1) * self.inner)


def lexicographic_product(g: Graph, h: Graph) -> tuple[Graph, ProductLabeling]:
    """G·H: (g1,h1) ~ (g2,h2) iff g1 ~ g2, or g1 == g2 and h1 ~ h2."""
    if g.n < 1 or h.n < 1:
        raise ConstructionError("product factors need at least one vertex")
    lab = ProductLabeling(g.n, h.n)
    edges = []
    for g1, g2 in g.edges:
        for h1 in range(h.n):
            for h2 in range(h.n):
                edges.append((lab.index(g1, h1), lab.index(g2, h2)))
    for x in range(g.n):
        for h1, h2 in h.edges:
            edges.append((lab.index(x, h1), lab.index(x, h2)))
    return Graph(g.n * h.n, edges), lab


# -- the H_m family ----------------------------------------------------------


def h_vertex(m: int, side: str, i: int) -> int:
    """Label of ``u_i`` (side 'u'), ``v_i`` (side 'v') or the hub (side 'w').

    Indices are 1-based and wrap modulo ``m``, so ``i = m + 1`` names ``u_1``.
    """
    if side == "w":
        return 2 * m
    j = (i - 1) % m
    if side == "u":
        return j
    if side == "v":
        return m + j
    raise ValueError(f"unknown side {side!r}")


def h_family(m: int) -> Graph:
    """The 2m+1 vertex graph H_m (m even, m >= 4).

    Two copies of K_m with the consecutive odd/even matching removed, a hub
    joined to every odd-indexed vertex, and rungs u_i--v_i for even i.
    Labels: u_1..u_m -> 0..m-1, v_1..v_m -> m..2m-1, hub -> 2m.
    """
    if m < 4 or m % 2:
        raise ConstructionError(f"H_m needs even m >= 4, got {m}")
    edges = []
    for side in ("u", "v"):
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                if i % 2 == 1 and j == i + 1:
                    continue
                edges.append((h_vertex(m, side, i), h_vertex(m, side, j)))
    w = h_vertex(m, "w", 0)
    for i in range(1, m + 1, 2):
        edges.append((w, h_vertex(m, "u", i)))
        edges.append((w, h_vertex(m, "v", i)))
    for i in range(2, m + 1, 2):
        edges.append((h_vertex(m, "u", i), h_vertex(m, "v", i)))
    return Graph(2 * m + 1, edges)


# -- quotients ---------------------------------------------------------------


@dataclass(frozen=True)
class VertexMap:
    source_order: int
    target_order: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source_order:
            raise ConstructionError(
                f"map defines {len(self.image)} images for {self.source_order} vertices"
            )
        for h in self.image:
            if not 0 <= h < self.target_order:
                raise ConstructionError(f"image {h} outside 0..{self.target_order - 1}")

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target_order


def parse_vertex_map(text: str, source_order: int) -> VertexMap:
    """Parse ``g h`` lines (one per source vertex); ``#`` comments allowed."""
    image: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            g, h = (int(p) for p in parts)
        except ValueError:
            raise ConstructionError(f"line {lineno}: expected 'g h', got {line!r}") from None
        if g in image:
            raise ConstructionError(f"line {lineno}: vertex {g} mapped twice")
        if not 0 <= g < source_order or h < 0:
            raise ConstructionError(f"line {lineno}: vertex out of range")
        image[g] = h
    missing = [g for g in range(source_order) if g not in image]
    if missing:
        raise ConstructionError(f"map is not total; missing {missing}")
    target = max(image.values(), default=-1) + 1
    return VertexMap(source_order, target, tuple(image[g] for g in range(source_order)))


def collapse(g: Graph, phi: VertexMap, d: Sequence[int]) -> tuple[Graph, Distribution]:
    """Quotient graph and fiber-summed distribution under a surjective map."""
    if phi.source_order != g.n:
        raise ConstructionError("map order does not match the graph")
    if not phi.is_surjective():
        raise ConstructionError("quotient map must be surjective")
    if len(d) != g.n:
        raise ConstructionError("distribution length does not match the graph")
    img = phi.image
    # within-fiber edges would be loops in the quotient; drop them
    edges = {(img[a], img[b]) for a, b in g.edges if img[a] != img[b]}
    out = [0] * phi.target_order
    for v, c in enumerate(d):
        out[img[v]] += c
    return Graph(phi.target_order, edges), tuple(out)


def product_projection(lab: ProductLabeling) -> VertexMap:
    """The map (g, i) -> g that collapses G·K_m onto G."""
    return VertexMap(
        lab.outer * lab.inner, lab.outer, tuple(x // lab.inner for x in range(lab.outer * lab.inner))
    )


# -- reduction and witness ---------------------------------------------------


def opn_to_ropn_reduction(g: Graph) -> tuple[Graph, ProductLabeling]:
    """Map an OPN instance G to the ROPN instance G·K_n."""
    if g.n < 2:
        raise ConstructionError("reduction needs a connected graph of order >= 2")
    if not is_connected(g):
        raise ConstructionError("reduction needs a connected graph")
    return lexicographic_product(g, complete_graph(g.n))


def product_witness(g: Graph, d: Sequence[int], m: int) -> Distribution:
    """Spread an optimal distribution of G over the fibers of G·K_m.

    ``d`` must be solvable with every loaded vertex 2-reachable (the output of
    ``normalize_optimal``). Each fiber gets its pairs on copies 1..D(g)/2 and
    any odd pebble on copy 0; if all pebbles sit on one vertex with
    ``D(g) == 2m``, every copy of that vertex gets two instead.
    """
    if len(d) != g.n:
        raise ConstructionError("distribution length does not match the graph")
    if m < max(1, ceil(g.n / 3)):
        raise ConstructionError(f"m={m} is below ceil(n/3)={ceil(g.n / 3)}")
    if not is_solvable(g, d):
        raise PebblingError("product witness needs a solvable distribution")
    if g.n >= 2 and stranded_vertices(g, d):
        raise PebblingError("product witness needs a normalized distribution")
    lab = ProductLabeling(g.n, m)
    q = [0] * (g.n * m)
    total = size(d)
    heavy = [v for v, c in enumerate(d) if c == 2 * m]
    if heavy and d[heavy[0]] == total:
        for x in lab.fiber(heavy[0]):
            q[x] = 2
        return tuple(q)
    if any(c >= 2 * m for c in d):
        raise ConstructionError("a pile of 2m or more pebbles must hold every pebble")
    for v, c in enumerate(d):
        if c % 2:
            q[lab.index(v, 0)] = 1
        for i in range(1, c // 2 + 1):
            q[lab.index(v, i)] = 2
    out = tuple(q)
    assert size(out) == total and is_restricted(out, 2)
    return out


def lift_sequence(
    g: Graph, d: Sequence[int], m: int, sigma: Sequence[Move], target: int, copy: int
) -> list[Move]:
    """Translate a sequence on G reaching ``target`` into one on G·K_m reaching
    ``(target, copy)`` under ``product_witness(g, d, m)``.

    The k-th move out of a vertex g spends the pair on copy k while
    ``k <= D(g)/2`` and the pebbles gathered on copy 0 afterwards (copies are
    taken mod m in the concentrated 2m case, where copy 0 also holds a pair).
    Every received pebble lands on copy 0, except the final delivery which lands
    on ``(target, copy)``. ``sigma`` must not move pebbles off ``target`` and
    must deliver to it only in its last move; when ``D(target) >= 2`` it is
    ignored and a single in-fiber move is returned.
    """
    lab = ProductLabeling(g.n, m)
    goal = lab.index(target, copy)
    if d[target] >= 2:
        # copy 1 holds a pair (copy 0 does when m == 1, which forces D = 2m)
        home = lab.index(target, 1 if m > 1 else 0)
        return [] if home == goal else [Move(home, goal)]
    if d[target] == 1 and copy == 0 and not sigma:
        return []
    concentrated = max(d) == 2 * m == size(d)
    used = [0] * g.n
    tau = []
    for i, (src, dst) in enumerate(sigma):
        if src == target:
            raise ConstructionError("sequence moves pebbles off the target")
        last = i == len(sigma) - 1
        if dst == target and not last:
            raise ConstructionError("sequence delivers to the target before its last move")
        used[src] += 1
        k = used[src]
        if concentrated:
            origin = lab.index(src, k % m)
        elif k <= d[src] // 2:
            origin = lab.index(src, k)
        else:
            origin = lab.index(src, 0)
        tau.append(Move(origin, goal if last else lab.index(dst, 0)))
    if not tau or sigma[-1].target != target:
        raise ConstructionError("sequence does not end with a delivery to the target")
    return tau
