"""Exact optimal / t-restricted optimal pebbling numbers and domination numbers.

Pebbling numbers are found by enumerating distributions in order of size and,
within a size, in ascending lexicographic order of the count vector; the first
solvable one is the witness. Candidates with some vertex of weight below 1 are
skipped unless pruning is switched off.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil
from typing import Iterator, Optional, Sequence

from .engine import Distribution, is_solvable, reachable_mask, weight_excludes
from .graph import Graph, components, induced_subgraph, is_connected, iter_pairs, max_degree


@dataclass(frozen=True)
class SolverResult:
    value: int
    witness: tuple = field(default=())
    explored: int = 0
    pruned: int = 0


def pebbling_cap(n: int) -> int:
    """Known upper bound ceil(2n/3) on pi* and pi*_2 of a connected graph."""
    return ceil(2 * n / 3)


def compositions(total: int, parts: int, cap: Optional[int] = None) -> Iterator[Distribution]:
    """All ``parts``-tuples of non-negative ints summing to ``total`` with every
    entry ``<= cap``, in ascending lexicographic order."""
    if cap is None:
        cap = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    if total > cap * parts:
        return
    prefix = [0] * parts

    def rec(i: int, left: int) -> Iterator[Distribution]:
        if i == parts - 1:
            if left <= cap:
                prefix[i] = left
                yield tuple(prefix)
            return
        rest = parts - i - 1
        lo = max(0, left - cap * rest)
        for c in range(lo, min(cap, left) + 1):
            prefix[i] = c
            yield from rec(i + 1, left - c)

    yield from rec(0, total)


# -- pebbling numbers --------------------------------------------------------


def _scan(g: Graph, candidates: Sequence[Distribution], prune: bool) -> tuple[int, int]:
    """Return ``(index of first solvable candidate or -1, pruned before it)``."""
    cache: dict = {}
    full = (1 << g.n) - 1
    pruned = 0
    for i, d in enumerate(candidates):
        if prune and weight_excludes(g, d):
            pruned += 1
            continue
        if reachable_mask(g, d, cache) == full:
            return i, pruned
    return -1, pruned


def _scan_chunk(args) -> tuple[int, int]:
    g, chunk, prune = args
    return _scan(g, chunk, prune)


def _search(
    g: Graph, t: Optional[int], prune: bool, workers: int, limit: Optional[int]
) -> Optional[SolverResult]:
    """Smallest solvable (t-restricted) distribution of size ``<= limit``."""
    n = g.n
    if n == 0:
        return SolverResult(0, ())
    top = n if limit is None else min(limit, n)
    explored = pruned = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for k in range(1, top + 1):
            cands = list(compositions(k, n, t))
            if pool is None:
                hit, pr = _scan(g, cands, prune)
                chunk_results = [(hit, pr, len(cands))]
            else:
                step = max(1, -(-len(cands) // (workers * 4)))
                chunks = [cands[i : i + step] for i in range(0, len(cands), step)]
                outs = pool.map(_scan_chunk, [(g, c, prune) for c in chunks])
                chunk_results = [(h, p, len(c)) for (h, p), c in zip(outs, chunks)]
            offset = 0
            for hit, pr, length in chunk_results:
                pruned += pr
                if hit >= 0:
                    explored += offset + hit + 1
                    return SolverResult(k, cands[offset + hit], explored, pruned)
                offset += length
            explored += len(cands)
    finally:
        if pool is not None:
            pool.shutdown()
    return None


def _by_components(g: Graph, solve) -> SolverResult:
    # pebbles cannot cross components, so the optimum is a sum
    witness = [0] * g.n
    value = explored = pruned = 0
    for comp in components(g):
        r = solve(induced_subgraph(g, comp))
        value += r.value
        explored += r.explored
        pruned += r.pruned
        for i, v in enumerate(comp):
            witness[v] = r.witness[i]
    return SolverResult(value, tuple(witness), explored, pruned)


def optimal_pebbling_number(g: Graph, *, prune: bool = True, workers: int = 1) -> SolverResult:
    """pi*(G) with the lexicographically least optimal distribution as witness.

    Disconnected graphs are solved per component and summed.
    """
    if not is_connected(g):
        return _by_components(g, lambda h: optimal_pebbling_number(h, prune=prune, workers=workers))
    result = _search(g, None, prune, workers, None)
    assert result is not None  # one pebble per vertex always solves
    return result


def restricted_optimal_pebbling_number(
    g: Graph, t: int, *, prune: bool = True, workers: int = 1
) -> SolverResult:
    """pi*_t(G); ``t = 1`` short-circuits to ``n`` with the all-ones witness."""
    if t < 1:
        raise ValueError(f"restriction t must be at least 1, got {t}")
    if t == 1:
        return SolverResult(g.n, (1,) * g.n)
    if not is_connected(g):
        return _by_components(
            g, lambda h: restricted_optimal_pebbling_number(h, t, prune=prune, workers=workers)
        )
    result = _search(g, t, prune, workers, None)
    assert result is not None
    return result


def opn_decision(g: Graph, k: int, *, prune: bool = True) -> bool:
    """Is pi*(G) <= k?"""
    if k < 0:
        return False
    if not is_connected(g):
        return optimal_pebbling_number(g, prune=prune).value <= k
    return _search(g, None, prune, 1, k) is not None


def ropn_decision(g: Graph, t: int, k: int, *, prune: bool = True) -> bool:
    """Is pi*_t(G) <= k?"""
    if t < 1:
        raise ValueError(f"restriction t must be at least 1, got {t}")
    if k < 0:
        return False
    if t == 1 or not is_connected(g):
        return restricted_optimal_pebbling_number(g, t, prune=prune).value <= k
    return _search(g, t, prune, 1, k) is not None


# -- pair witnesses ----------------------------------------------------------


def two_pile_witness(g: Graph) -> Optional[tuple[int, int]]:
    """First pair (x, y) such that two pebbles on each of x and y is solvable."""
    if not is_connected(g):
        raise ValueError("two_pile_witness needs a connected graph")
    cache: dict = {}
    for x, y in iter_pairs(g.n):
        d = [0] * g.n
        d[x] = d[y] = 2
        if is_solvable(g, d, cache=cache):
            return x, y
    return None


def dominating_pair_witness(g: Graph) -> Optional[tuple[int, int]]:
    """First pair (u, v) with {u, v} plus their common neighbors dominating G.

    Disconnected graphs have no witness: the pair characterization concerns
    connected graphs only, and two isolated vertices would otherwise qualify.
    """
    if not is_connected(g):
        return None
    full = (1 << g.n) - 1
    nbr = g.neighbor_masks
    closed = [nbr[v] | 1 << v for v in range(g.n)]
    for u, v in iter_pairs(g.n):
        core = (1 << u) | (1 << v) | (nbr[u] & nbr[v])
        covered = 0
        x = core
        while x:
            low = x & -x
            covered |= closed[low.bit_length() - 1]
            x ^= low
        if covered == full:
            return u, v
    return None


# -- domination --------------------------------------------------------------


def is_dominating(g: Graph, vertices) -> bool:
    covered = set(vertices)
    for v in vertices:
        covered |= g.adjacency[v]
    return len(covered) == g.n


def is_roman_domination(g: Graph, f: Sequence[int]) -> bool:
    if len(f) != g.n or any(x not in (0, 1, 2) for x in f):
        return False
    return all(x or any(f[u] == 2 for u in g.adjacency[v]) for v, x in enumerate(f))


def _closed_masks(g: Graph) -> list[int]:
    return [m | 1 << v for v, m in enumerate(g.neighbor_masks)]


def _greedy_dominating_set(g: Graph) -> list[int]:
    closed = _closed_masks(g)
    full = (1 << g.n) - 1
    covered, chosen = 0, []
    while covered != full:
        best = max(range(g.n), key=lambda v: (bin(closed[v] & ~covered).count("1"), -v))
        chosen.append(best)
        covered |= closed[best]
    return sorted(chosen)


def domination_number(g: Graph) -> SolverResult:
    """gamma(G) by subset search between a degree lower bound and a greedy upper bound."""
    n = g.n
    if n == 0:
        return SolverResult(0, ())
    closed = _closed_masks(g)
    full = (1 << n) - 1
    upper = _greedy_dominating_set(g)
    lower = ceil(n / (max_degree(g) + 1))
    explored = 0
    for k in range(lower, len(upper)):
        for subset in combinations(range(n), k):
            explored += 1
            covered = 0
            for v in subset:
                covered |= closed[v]
            if covered == full:
                return SolverResult(k, subset, explored, 0)
    return SolverResult(len(upper), tuple(upper), explored, 0)


def roman_domination_number(g: Graph) -> SolverResult:
    """gamma_R(G) as the minimum over 2-labeled sets S of 2|S| + |V minus N[S]|.

    Sets are tried by increasing size; the search stops once 2|S| alone reaches
    the incumbent. The incumbent starts at 2*gamma (a dominating set labeled 2)
    and the search also stops at the lower bound gamma.
    """
    n = g.n
    if n == 0:
        return SolverResult(0, ())
    closed = _closed_masks(g)
    dom = domination_number(g)
    best = 2 * dom.value
    best_f = tuple(2 if v in dom.witness else 0 for v in range(n))
    if n < best:
        best, best_f = n, (1,) * n
    explored = pruned = 0
    for j in range(n + 1):
        if 2 * j >= best or best == dom.value:
            break
        for subset in combinations(range(n), j):
            explored += 1
            covered = 0
            for v in subset:
                covered |= closed[v]
            cost = 2 * j + n - bin(covered).count("1")
            if cost < best:
                best = cost
                chosen = set(subset)
                best_f = tuple(
                    2 if v in chosen else (0 if covered >> v & 1 else 1) for v in range(n)
                )
            else:
                pruned += 1
    return SolverResult(best, best_f, explored, pruned)
