"""Compact move transcripts and verifiable solvability certificates.

A transcript forgets the order of a move sequence and keeps only how many
times each directed move is used. Deciding whether some ordering of a
transcript is executable goes through three stages (see
``schedule_transcript``); ``exhaustive_feasible`` is the brute-force ordering
oracle the decision is validated against.

Certificate text format::

    PEBBLING-CERTIFICATE 1
    GRAPH
    order <n>
    edges <m>
    fingerprint <64-bit int>
    CLAIM
    restriction <t>          # 0 = unrestricted
    bound <k>
    DISTRIBUTION
    <v> <count>              # nonzero entries, ascending v
    TRANSCRIPT <v>           # one section per vertex, ascending v
    <source> <target> <count>
    END
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .engine import Distribution, Move, PebblingError, is_restricted, k_reachable, size
from .graph import Graph

Transcript = Counter  # Counter[Move] with positive counts

MAGIC = "PEBBLING-CERTIFICATE 1"


class CertificateError(ValueError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def transcript_of(moves: Iterable[Move]) -> Transcript:
    return Counter(Move(*m) for m in moves)


def final_counts(d: Sequence[int], tr: Transcript) -> list[int]:
    """Distribution after executing every move of ``tr``, whatever the order."""
    out = list(d)
    for (src, dst), c in tr.items():
        out[src] -= 2 * c
        out[dst] += c
    return out


def _check_moves(g: Graph, tr: Transcript) -> None:
    for (src, dst), c in tr.items():
        if not g.has_edge(src, dst):
            raise CertificateError(f"transcript move {src}->{dst} is not an edge")
        if c < 1:
            raise CertificateError(f"transcript move {src}->{dst} has count {c}")


def greedy_schedule(g: Graph, d: Sequence[int], tr: Transcript) -> Optional[list[Move]]:
    """Greedy saturation: fire the lowest remaining move whose source holds two
    pebbles until none remain (success) or none can fire (None).

    Not exact on transcripts whose moves form a cycle: on K_3 with
    D = (0, 1, 3), {1->2, 2->0, 2->1} is executable as 2->1, 1->2, 2->0, but
    greedy spends vertex 2 on 2->0 first and stalls.
    """
    _check_moves(g, tr)
    cur = list(d)
    left = dict(tr)
    order: list[Move] = []
    moves = sorted(left)
    while left:
        for m in moves:
            if left.get(m) and cur[m.source] >= 2:
                cur[m.source] -= 2
                cur[m.target] += 1
                order.append(m)
                left[m] -= 1
                if not left[m]:
                    del left[m]
                break
        else:
            return None
    return order


def _topological_schedule(tr: Transcript) -> Optional[list[Move]]:
    """All moves grouped by source in topological order of the move digraph,
    or None if that digraph has a cycle."""
    out: dict[int, list[Move]] = {}
    indeg: dict[int, int] = {}
    for m in sorted(tr):
        out.setdefault(m.source, []).append(m)
        indeg.setdefault(m.source, 0)
        indeg[m.target] = indeg.get(m.target, 0) + 1
    ready = [v for v, k in indeg.items() if k == 0]
    heapq.heapify(ready)
    order: list[Move] = []
    done = 0
    while ready:
        v = heapq.heappop(ready)
        done += 1
        for m in out.get(v, ()):
            order.extend([m] * tr[m])
            indeg[m.target] -= 1
            if indeg[m.target] == 0:
                heapq.heappush(ready, m.target)
    return order if done == len(indeg) else None


def _search_schedule(d: Sequence[int], tr: Transcript) -> Optional[list[Move]]:
    moves = sorted(tr)
    dead: set[tuple[int, ...]] = set()
    cur = list(d)
    left = [tr[m] for m in moves]
    order: list[Move] = []

    def rec() -> bool:
        if not any(left):
            return True
        key = tuple(left)
        if key in dead:
            return False
        for i, m in enumerate(moves):
            if left[i] and cur[m.source] >= 2:
                cur[m.source] -= 2
                cur[m.target] += 1
                left[i] -= 1
                order.append(m)
                if rec():
                    return True
                order.pop()
                left[i] += 1
                cur[m.source] += 2
                cur[m.target] -= 1
        dead.add(key)
        return False

    return order if rec() else None


def schedule_transcript(g: Graph, d: Sequence[int], tr: Transcript) -> Optional[list[Move]]:
    """An executable ordering of exactly the moves in ``tr``, or None.

    Negative final counts are rejected outright. With an acyclic move digraph,
    non-negative final counts suffice: each vertex fires its moves after
    everything it receives has arrived. Cyclic transcripts try greedy first and
    then a memoized search over the remaining multiset.
    """
    _check_moves(g, tr)
    if min(final_counts(d, tr), default=0) < 0:
        return None
    order = _topological_schedule(tr)
    if order is not None:
        return order
    order = greedy_schedule(g, d, tr)
    if order is None:
        order = _search_schedule(d, tr)
    return order


def transcript_feasible(
    g: Graph, d: Sequence[int], tr: Transcript, target: Optional[int] = None
) -> bool:
    """True iff some ordering of ``tr`` is executable under ``d`` and, when a
    ``target`` is given, the result leaves at least one pebble on it."""
    if schedule_transcript(g, d, tr) is None:
        return False
    return target is None or final_counts(d, tr)[target] >= 1


def exhaustive_feasible(g: Graph, d: Sequence[int], tr: Transcript) -> bool:
    """Reference oracle: walk every distinct ordering of the multiset, cutting
    only orderings whose prefix is already not executable."""
    _check_moves(g, tr)
    pool = Counter(tr)
    cur = list(d)

    def rec(remaining: int) -> bool:
        if remaining == 0:
            return True
        for m in list(pool):
            if pool[m] and cur[m.source] >= 2:
                pool[m] -= 1
                cur[m.source] -= 2
                cur[m.target] += 1
                ok = rec(remaining - 1)
                pool[m] += 1
                cur[m.source] += 2
                cur[m.target] -= 1
                if ok:
                    return True
        return False

    return rec(sum(pool.values()))


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class SolvabilityCertificate:
    order: int
    edge_count: int
    fingerprint: int
    restriction: int
    bound: int
    distribution: Distribution
    # transcripts[v] is a sorted tuple of (source, target, count) triples
    transcripts: tuple[tuple[tuple[int, int, int], ...], ...]

    def transcript(self, v: int) -> Transcript:
        return Counter({Move(s, t): c for s, t, c in self.transcripts[v]})


def _freeze(tr: Transcript) -> tuple[tuple[int, int, int], ...]:
    return tuple(sorted((m.source, m.target, c) for m, c in tr.items() if c))


def build_certificate(g: Graph, d: Sequence[int], restriction: int = 0) -> SolvabilityCertificate:
    """Certificate for a solvable ``d``: one reachability witness per vertex."""
    if restriction and not is_restricted(d, restriction):
        raise PebblingError(f"distribution is not {restriction}-restricted")
    transcripts = []
    for v in range(g.n):
        ok, seq = k_reachable(g, d, v, 1)
        if not ok:
            raise PebblingError(f"vertex {v} is unreachable; distribution is not solvable")
        transcripts.append(_freeze(transcript_of(seq)))
    return SolvabilityCertificate(
        g.n, g.edge_count, g.fingerprint, restriction, size(d), tuple(d), tuple(transcripts)
    )


def verify_certificate(g: Graph, cert: SolvabilityCertificate) -> bool:
    """Check a certificate against ``g``; True certifies pi*_t(G) <= bound.

    A fingerprint mismatch or a non-edge move raises ``CertificateError``; a
    certificate that is merely wrong returns False.
    """
    if (cert.order, cert.edge_count, cert.fingerprint) != (g.n, g.edge_count, g.fingerprint):
        raise CertificateError("certificate was issued for a different graph")
    d = cert.distribution
    if len(d) != g.n or len(cert.transcripts) != g.n:
        return False
    if min(d, default=0) < 0 or size(d) != cert.bound:
        return False
    if cert.restriction and not is_restricted(d, cert.restriction):
        return False
    for v in range(g.n):
        if not transcript_feasible(g, d, cert.transcript(v), target=v):
            return False
    return True


def emit_certificate(cert: SolvabilityCertificate) -> str:
    lines = [
        MAGIC,
        "GRAPH",
        f"order {cert.order}",
        f"edges {cert.edge_count}",
        f"fingerprint {cert.fingerprint}",
        "CLAIM",
        f"restriction {cert.restriction}",
        f"bound {cert.bound}",
        "DISTRIBUTION",
    ]
    lines += [f"{v} {c}" for v, c in enumerate(cert.distribution) if c]
    for v, tr in enumerate(cert.transcripts):
        lines.append(f"TRANSCRIPT {v}")
        lines += [f"{s} {t} {c}" for s, t, c in tr]
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> SolvabilityCertificate:
    """Inverse of ``emit_certificate``; structural problems raise with a line number."""
    rows = text.split("\n")
    if rows and rows[-1] == "":
        rows.pop()
    pos = 0

    def take() -> tuple[int, str]:
        nonlocal pos
        if pos >= len(rows):
            raise CertificateError("unexpected end of document", len(rows) + 1)
        pos += 1
        return pos, rows[pos - 1]

    def expect(word: str) -> None:
        ln, line = take()
        if line != word:
            raise CertificateError(f"expected {word!r}, got {line!r}", ln)

    def keyed(key: str) -> int:
        ln, line = take()
        parts = line.split(" ")
        if len(parts) != 2 or parts[0] != key:
            raise CertificateError(f"expected '{key} <int>', got {line!r}", ln)
        return _int(parts[1], ln)

    def ints(line: str, ln: int, count: int) -> list[int]:
        parts = line.split(" ")
        if len(parts) != count:
            raise CertificateError(f"expected {count} integers, got {line!r}", ln)
        return [_int(p, ln) for p in parts]

    expect(MAGIC)
    expect("GRAPH")
    order = keyed("order")
    edges = keyed("edges")
    fingerprint = keyed("fingerprint")
    expect("CLAIM")
    restriction = keyed("restriction")
    bound = keyed("bound")
    expect("DISTRIBUTION")

    dist = [0] * order
    last = -1
    while pos < len(rows) and not rows[pos].startswith("TRANSCRIPT") and rows[pos] != "END":
        ln, line = take()
        v, c = ints(line, ln, 2)
        if v >= order or v <= last:
            raise CertificateError(f"vertex {v} out of range or out of order", ln)
        if c == 0:
            raise CertificateError("zero entries are omitted in canonical form", ln)
        dist[v] = c
        last = v

    transcripts = []
    for v in range(order):
        ln, line = take()
        if line != f"TRANSCRIPT {v}":
            raise CertificateError(f"expected 'TRANSCRIPT {v}', got {line!r}", ln)
        triples: list[tuple[int, int, int]] = []
        while pos < len(rows) and not rows[pos].startswith("TRANSCRIPT") and rows[pos] != "END":
            ln, line = take()
            s, t, c = ints(line, ln, 3)
            if s >= order or t >= order or c < 1:
                raise CertificateError(f"bad transcript entry {line!r}", ln)
            if triples and (s, t) <= triples[-1][:2]:
                raise CertificateError("transcript entries must be strictly ascending", ln)
            triples.append((s, t, c))
        transcripts.append(tuple(triples))
    expect("END")
    if pos != len(rows):
        raise CertificateError("trailing content after END", pos + 1)
    return SolvabilityCertificate(
        order, edges, fingerprint, restriction, bound, tuple(dist), tuple(transcripts)
    )


def _int(token: str, ln: int) -> int:
    if not token.isdigit():
        raise CertificateError(f"expected a non-negative integer, got {token!r}", ln)
    return int(token)
