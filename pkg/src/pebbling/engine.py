"""Pebbling moves, exact reachability, the weight bound, and normalization.

Distributions are plain tuples of non-negative ints indexed by vertex. They are
hashable, which is what the memoized searches key on.
"""

from __future__ import annotations

import weakref
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .graph import INF, Graph, is_connected

Distribution = tuple[int, ...]


class Move(NamedTuple):
    source: int
    target: int

    def __str__(self) -> str:
        return f"{self.source}->{self.target}"


class PebblingError(ValueError):
    pass


# -- distributions ----------------------------------------------------------


def size(d: Sequence[int]) -> int:
    return sum(d)


def is_restricted(d: Sequence[int], t: int) -> bool:
    """True when no vertex holds more than ``t`` pebbles."""
    return max(d, default=0) <= t


def distribution(n: int, counts: dict[int, int] | None = None) -> Distribution:
    """Build a length-``n`` distribution from a sparse ``{vertex: count}`` map."""
    d = [0] * n
    for v, c in (counts or {}).items():
        if not 0 <= v < n:
            raise PebblingError(f"vertex {v} out of range for order {n}")
        if c < 0:
            raise PebblingError(f"negative pebble count {c} at vertex {v}")
        d[v] += c
    return tuple(d)


def parse_distribution(text: str, n: int) -> Distribution:
    """Parse comma-separated ``v:count`` pairs; omitted vertices get 0."""
    counts: dict[int, int] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        v_text, sep, c_text = item.partition(":")
        if not sep:
            raise PebblingError(f"expected 'v:count', got {item!r}")
        try:
            v, c = int(v_text), int(c_text)
        except ValueError:
            raise PebblingError(f"non-integer entry {item!r}") from None
        if v in counts:
            raise PebblingError(f"vertex {v} listed twice")
        counts[v] = c
    return distribution(n, counts)


def format_distribution(d: Sequence[int]) -> str:
    return ",".join(f"{v}:{c}" for v, c in enumerate(d) if c)


# -- moves ------------------------------------------------------------------


def apply_move(g: Graph, d: Sequence[int], move: Move) -> Distribution:
    src, dst = move
    if not g.has_edge(src, dst):
        raise PebblingError(f"{src}->{dst} is not an edge")
    if d[src] < 2:
        raise PebblingError(f"vertex {src} holds {d[src]} pebble(s), needs 2")
    out = list(d)
    out[src] -= 2
    out[dst] += 1
    return tuple(out)


def apply_sequence(g: Graph, d: Sequence[int], moves: Iterable[Move]) -> Distribution:
    out = tuple(d)
    for m in moves:
        out = apply_move(g, out, m)
    return out


def is_executable(g: Graph, d: Sequence[int], moves: Iterable[Move]) -> bool:
    """True iff every prefix of ``moves`` applies to ``d`` without a deficit."""
    cur = list(d)
    for src, dst in moves:
        if not g.has_edge(src, dst):
            raise PebblingError(f"{src}->{dst} is not an edge")
        if cur[src] < 2:
            return False
        cur[src] -= 2
        cur[dst] += 1
    return True


def legal_moves(g: Graph, d: Sequence[int]) -> list[Move]:
    adj = g.sorted_adjacency
    return [Move(v, u) for v, c in enumerate(d) if c >= 2 for u in adj[v]]


# -- weight -----------------------------------------------------------------

_WEIGHT_TABLES: "weakref.WeakKeyDictionary[Graph, tuple[int, tuple[tuple[int, ...], ...]]]" = (
    weakref.WeakKeyDictionary()
)


def weight_table(g: Graph) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Return ``(scale, coef)`` with ``coef[u][v] = scale * 2**-d(u,v)``.

    ``scale`` is ``2**e`` where ``e`` is the largest finite distance, so every
    coefficient is an integer. Unreachable pairs contribute 0.
    """
    table = _WEIGHT_TABLES.get(g)
    if table is None:
        finite = [x for row in g.distances for x in row if x != INF]
        e = int(max(finite, default=0))
        scale = 1 << e
        coef = tuple(
            tuple(0 if x == INF else scale >> int(x) for x in row) for row in g.distances
        )
        table = (scale, coef)
        _WEIGHT_TABLES[g] = table
    return table


def weight_numerator(g: Graph, d: Sequence[int], u: int) -> int:
    """``weight(g, d, u) * scale`` as an exact integer (see ``weight_table``)."""
    _, coef = weight_table(g)
    row = coef[u]
    return sum(c * row[v] for v, c in enumerate(d) if c)


def weight(g: Graph, d: Sequence[int], u: int) -> Fraction:
    """Exact ``sum_v d(v) * 2**-dist(u, v)``; connected graphs only."""
    if not is_connected(g):
        raise PebblingError("weight is defined on connected graphs only")
    scale, _ = weight_table(g)
    return Fraction(weight_numerator(g, d, u), scale)


def weight_excludes(g: Graph, d: Sequence[int]) -> bool:
    """True when some vertex has weight < 1, i.e. ``d`` is certainly unsolvable.

    Vertices in other components count as infinitely far away, so on a
    disconnected graph a component without pebbles is excluded too.
    """
    scale, coef = weight_table(g)
    loaded = [(v, c) for v, c in enumerate(d) if c]
    for row in coef:
        if sum(c * row[v] for v, c in loaded) < scale:
            return True
    return False


# -- reachability -----------------------------------------------------------


def k_reachable(
    g: Graph, d: Sequence[int], v: int, k: int = 1, *, prune: bool = True
) -> tuple[bool, Optional[list[Move]]]:
    """Decide whether some executable sequence leaves ``>= k`` pebbles on ``v``.

    Exhaustive depth-first search over distributions with a per-query memo of
    dead states. With ``prune`` on, states where the weight of ``v`` is below
    ``k`` are cut (sound by the weight bound). Returns ``(answer, witness)``.
    """
    if k < 1:
        raise PebblingError("k must be at least 1")
    adj = g.sorted_adjacency
    scale, coef = weight_table(g)
    row = coef[v]
    need = k * scale
    dead: set[tuple[int, ...]] = set()
    path: list[Move] = []

    def search(state: list[int]) -> bool:
        if state[v] >= k:
            return True
        key = tuple(state)
        if key in dead:
            return False
        if prune and sum(c * row[x] for x, c in enumerate(state) if c) < need:
            dead.add(key)
            return False
        for x, c in enumerate(state):
            if c < 2:
                continue
            for y in adj[x]:
                state[x] -= 2
                state[y] += 1
                path.append(Move(x, y))
                found = search(state)
                state[x] += 2
                state[y] -= 1
                if found:
                    return True
                path.pop()
        dead.add(key)
        return False

    if search(list(d)):
        return True, list(path)
    return False, None


def reachable_mask(g: Graph, d: Sequence[int], cache: Optional[dict] = None) -> int:
    """Bitmask of vertices that can hold a pebble after some executable sequence.

    ``cache`` maps states to masks and may be shared across calls on the same
    graph (it depends only on the graph's adjacency).
    """
    if cache is None:
        cache = {}
    adj = g.sorted_adjacency
    full = (1 << g.n) - 1

    def visit(state: tuple[int, ...]) -> int:
        hit = cache.get(state)
        if hit is not None:
            return hit
        mask = 0
        for x, c in enumerate(state):
            if c:
                mask |= 1 << x
        if mask != full:
            cur = list(state)
            for x, c in enumerate(state):
                if c < 2:
                    continue
                for y in adj[x]:
                    cur[x] -= 2
                    cur[y] += 1
                    mask |= visit(tuple(cur))
                    cur[x] += 2
                    cur[y] -= 1
                    if mask == full:
                        break
                if mask == full:
                    break
        cache[state] = mask
        return mask

    return visit(tuple(d))


def is_solvable(
    g: Graph, d: Sequence[int], *, prune: bool = True, cache: Optional[dict] = None
) -> bool:
    """True iff every vertex is reachable under ``d``."""
    if len(d) != g.n:
        raise PebblingError(f"distribution has {len(d)} entries for order {g.n}")
    if prune and weight_excludes(g, d):
        return False
    return reachable_mask(g, d, cache) == (1 << g.n) - 1


def unreachable_vertices(g: Graph, d: Sequence[int]) -> list[int]:
    mask = reachable_mask(g, d)
    return [v for v in range(g.n) if not mask >> v & 1]


# -- normalization ----------------------------------------------------------


def stranded_vertices(g: Graph, d: Sequence[int]) -> list[int]:
    """Loaded vertices that are not 2-reachable (each holds exactly one pebble)."""
    return [v for v, c in enumerate(d) if c and not k_reachable(g, d, v, 2)[0]]


def normalize_optimal(g: Graph, d: Sequence[int]) -> Distribution:
    """Relocate stranded single pebbles until every loaded vertex is 2-reachable.

    Each stranded pebble can never move, so shifting it to a neighbor keeps
    every vertex reachable and makes that neighbor 2-reachable. Neighbor choice
    is deterministic: the lowest-indexed neighbor that is 2-reachable once the
    stranded pebble is removed, otherwise the lowest-indexed neighbor.
    """
    if g.n < 2 or not is_connected(g):
        raise PebblingError("normalization needs a connected graph of order >= 2")
    cur = tuple(d)
    if not is_solvable(g, cur):
        raise PebblingError("normalization needs a solvable distribution")
    while True:
        stranded = stranded_vertices(g, cur)
        if not stranded:
            return cur
        v = stranded[0]
        lifted = list(cur)
        lifted[v] -= 1
        lifted = tuple(lifted)
        nbrs = g.sorted_adjacency[v]
        u = next((x for x in nbrs if k_reachable(g, lifted, x, 2)[0]), nbrs[0])
        moved = list(lifted)
        moved[u] += 1
        nxt = tuple(moved)
        # the lemma guarantees both of these; a failure means an engine bug
        assert is_solvable(g, nxt, prune=False)
        assert len(stranded_vertices(g, nxt)) < len(stranded)
        cur = nxt
