"""Executable checks of the pebbling results, one ``ClaimReport`` per check.

Every report carries the instance, the relation that is expected to hold, the
computed values and a verdict. Reports serialize to text and to JSON lines;
wall-clock time is only included on request so that reruns are byte-identical.
"""

from __future__ import annotations

import json
import random
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, Optional

from . import constructions as C
from .certificates import (
    build_certificate,
    emit_certificate,
    exhaustive_feasible,
    greedy_schedule,
    transcript_feasible,
    verify_certificate,
)
from .engine import (
    Move,
    apply_sequence,
    distribution,
    is_executable,
    is_restricted,
    is_solvable,
    k_reachable,
    normalize_optimal,
    reachable_mask,
    size,
    stranded_vertices,
    weight,
    weight_numerator,
    weight_table,
)
from .generators import graph_classes, labeled_graphs, random_connected_graph
from .graph import Graph, diameter, is_connected, min_degree
from .solver import (
    compositions,
    domination_number,
    dominating_pair_witness,
    opn_decision,
    optimal_pebbling_number,
    pebbling_cap,
    restricted_optimal_pebbling_number,
    roman_domination_number,
    ropn_decision,
    two_pile_witness,
)


class CapExceeded(ValueError):
    """An instance is larger than the configured cap for its experiment."""


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


H_FAMILY_CAP = _env_cap("PEBBLING_H_FAMILY_CAP", 6)
PRODUCT_CAP = _env_cap("PEBBLING_PRODUCT_CAP", 12)
CHAIN_CAP = _env_cap("PEBBLING_CHAIN_CAP", 13)
SEARCH_CAP = _env_cap("PEBBLING_SEARCH_CAP", 10)


@dataclass
class ClaimReport:
    claim: str
    instance: str
    expected: str
    computed: dict
    verdict: bool
    elapsed: float = 0.0
    witnesses: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    def to_record(self, timings: bool = False) -> dict:
        rec = {
            "claim": self.claim,
            "instance": self.instance,
            "expected": self.expected,
            "computed": self.computed,
            "verdict": "pass" if self.verdict else "fail",
            "witnesses": self.witnesses,
        }
        if timings:
            rec["elapsed"] = round(self.elapsed, 3)
        return rec

    def to_jsonl(self, timings: bool = False, rows: bool = False) -> str:
        lines = [json.dumps(self.to_record(timings), sort_keys=True, default=_jsonable)]
        if rows:
            for r in self.rows:
                lines.append(json.dumps({"claim": self.claim, **r}, sort_keys=True, default=_jsonable))
        return "\n".join(lines)

    def to_text(self, timings: bool = False) -> str:
        head = f"[{'PASS' if self.verdict else 'FAIL'}] {self.claim}: {self.instance}"
        if timings:
            head += f" ({self.elapsed:.2f}s)"
        body = [f"  expected: {self.expected}"]
        body += [f"  {k}: {_jsonable(v)}" for k, v in self.computed.items()]
        body += [f"  witness {k}: {_jsonable(v)}" for k, v in self.witnesses.items()]
        return "\n".join([head] + body)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    return x


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed = time.perf_counter() - start
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- H_m ---------------------------------------------------------------------


def claim8_distribution(m: int) -> tuple[int, ...]:
    """Two pebbles on u_1 and v_1, one on the hub."""
    u1, v1, w = C.h_vertex(m, "u", 1), C.h_vertex(m, "v", 1), C.h_vertex(m, "w", 0)
    return distribution(2 * m + 1, {u1: 2, v1: 2, w: 1})


def claim8_sequence(m: int) -> list[Move]:
    """(u_1 -> u_3), (v_1 -> w), (w -> u_3), (u_3 -> u_2)."""
    u = lambda i: C.h_vertex(m, "u", i)  # noqa: E731
    v1, w = C.h_vertex(m, "v", 1), C.h_vertex(m, "w", 0)
    return [Move(u(1), u(3)), Move(v1, w), Move(w, u(3)), Move(u(3), u(2))]


@_timed
def verify_h_family(m: int, cap: Optional[int] = None) -> ClaimReport:
    cap = H_FAMILY_CAP if cap is None else cap
    if m > cap:
        raise CapExceeded(f"m={m} exceeds the H_m cap {cap}; raise it with PEBBLING_H_FAMILY_CAP")
    g = C.h_family(m)
    opt = optimal_pebbling_number(g)
    res = restricted_optimal_pebbling_number(g, 2)
    d_star = claim8_distribution(m)
    hub = distribution(g.n, {C.h_vertex(m, "w", 0): 4})
    seq = claim8_sequence(m)
    u2 = C.h_vertex(m, "u", 2)
    seq_ok = is_executable(g, d_star, seq) and apply_sequence(g, d_star, seq)[u2] >= 1
    computed = {
        "order": g.n,
        "min_degree": min_degree(g),
        "pi_star": opt.value,
        "pi_star_2": res.value,
        "d_star_solvable": is_solvable(g, d_star, prune=False),
        "d_star_2_restricted": is_restricted(d_star, 2),
        "hub_four_solvable": is_solvable(g, hub, prune=False),
        "u2_sequence_delivers": seq_ok,
        "two_pile_witness": two_pile_witness(g),
    }
    verdict = (
        opt.value == 4
        and res.value == 5
        and computed["min_degree"] == m - 1
        and computed["d_star_solvable"]
        and computed["d_star_2_restricted"]
        and computed["hub_four_solvable"]
        and seq_ok
        and computed["two_pile_witness"] is None
    )
    return ClaimReport(
        "h-family",
        f"H_{m}",
        "pi*(H_m) = 4 and pi*_2(H_m) = 5",
        computed,
        verdict,
        witnesses={"pi_star": list(opt.witness), "pi_star_2": list(res.witness)},
    )


def h_weight_cases(m: int) -> list[dict]:
    """Exact weights of u_{2k+2} in the three quoted cases, for every k.

    Case C is evaluated with l = k (the pair shares an index); the l != k
    values are recorded alongside, together with whether the two-pile
    distribution is solvable at all.
    """
    g = C.h_family(m)
    hv = lambda side, i: C.h_vertex(m, side, i)  # noqa: E731
    w = hv("w", 0)
    rows = []
    for k in range(1, m // 2 + 1):
        tgt = hv("u", 2 * k + 2)
        a = distribution(g.n, {w: 2, hv("v", 2 * k + 1): 2})
        b = distribution(g.n, {w: 2, hv("v", 2 * k): 2})
        rows.append({"case": "w+v_odd", "k": k, "weight": weight(g, a, tgt), "expected": Fraction(3, 4)})
        rows.append({"case": "w+v_even", "k": k, "weight": weight(g, b, tgt), "expected": Fraction(1)})
        for l in range(1, m // 2 + 1):
            c = distribution(g.n, {hv("v", 2 * k + 1): 2, hv("u", 2 * l + 1): 2})
            rows.append(
                {
                    "case": "v_odd+u_odd",
                    "k": k,
                    "l": l,
                    "weight": weight(g, c, tgt),
                    "expected": Fraction(3, 4) if l == k else None,
                    "solvable": is_solvable(g, c, prune=False),
                }
            )
    return rows


@_timed
def verify_weight_cases(m: int) -> ClaimReport:
    rows = h_weight_cases(m)
    bad = []
    for r in rows:
        if r["case"] == "v_odd+u_odd":
            if r["solvable"] or (r["expected"] is not None and not r["weight"] <= r["expected"]):
                bad.append(r)
        elif r["weight"] != r["expected"]:
            bad.append(r)
    computed = {
        "cases": len(rows),
        "violations": len(bad),
        "off_diagonal_weights": sorted(
            {str(r["weight"]) for r in rows if r["case"] == "v_odd+u_odd" and r["l"] != r["k"]}
        ),
    }
    out_rows = [{k: _jsonable(v) for k, v in r.items()} for r in rows]
    return ClaimReport(
        "weights",
        f"H_{m}",
        "W(u_{2k+2}) = 3/4 | 1 | <= 3/4 (l = k) exactly; every v_odd+u_odd two-pile is unsolvable",
        computed,
        not bad,
        rows=out_rows,
    )


# -- product theorem ---------------------------------------------------------


@_timed
def verify_product_theorem(
    g: Graph, m: int, t: int = 2, name: str = "G", cap: Optional[int] = None
) -> ClaimReport:
    cap = PRODUCT_CAP if cap is None else cap
    if not is_connected(g):
        raise ValueError("the product theorem needs a connected graph")
    if t < 2:
        raise ValueError("the product theorem needs t >= 2")
    if m < ceil(g.n / 3):
        raise ValueError(f"m={m} is below ceil(n/3)={ceil(g.n / 3)}")
    if g.n * m > cap:
        raise CapExceeded(f"n*m={g.n * m} exceeds the product cap {cap}")
    prod, lab = C.lexicographic_product(g, C.complete_graph(m))
    base = optimal_pebbling_number(g)
    p_opt = optimal_pebbling_number(prod)
    p_res = restricted_optimal_pebbling_number(prod, t)
    d = normalize_optimal(g, base.witness) if g.n >= 2 else base.witness
    q = C.product_witness(g, d, m)
    _, collapsed = C.collapse(prod, C.product_projection(lab), q)
    lifted_ok = _lifts_deliver(g, d, m, prod, q)
    computed = {
        "pi_star_G": base.value,
        "pi_star_product": p_opt.value,
        "pi_star_t_product": p_res.value,
        "witness_size": size(q),
        "witness_2_restricted": is_restricted(q, 2),
        "witness_solvable": is_solvable(prod, q, prune=False),
        "witness_fiber_sums_match": collapsed == tuple(d),
        "lifted_sequences_deliver": lifted_ok,
    }
    verdict = (
        base.value == p_opt.value == p_res.value == size(q)
        and computed["witness_2_restricted"]
        and computed["witness_solvable"]
        and computed["witness_fiber_sums_match"]
        and lifted_ok
    )
    return ClaimReport(
        "product",
        f"{name}.K_{m}, t={t}",
        "pi*(G) = pi*(G.K_m) = pi*_t(G.K_m); Q witness solvable, 2-restricted, |Q| = pi*(G)",
        computed,
        verdict,
        witnesses={"G": list(d), "Q": list(q)},
    )


def _lifts_deliver(g: Graph, d, m: int, prod: Graph, q) -> bool:
    """Lift a reachability witness on G to every vertex (g*, j) of the product."""
    for target in range(g.n):
        need = 2 if d[target] == 1 else 1
        sigma: list[Move] = []
        if d[target] < 2:
            ok, sigma = k_reachable(g, d, target, need)
            if not ok:
                return False
        for j in range(m):
            if d[target] == 1 and j == 0:
                continue  # the odd pebble already sits on (g*, 0)
            tau = C.lift_sequence(g, d, m, sigma, target, j)
            if not is_executable(prod, q, tau):
                return False
            if apply_sequence(prod, q, tau)[target * m + j] < 1:
                return False
    return True


# -- chain and bounds --------------------------------------------------------


def chain_values(g: Graph, t_max: int = 5, *, prune: bool = True) -> dict:
    vals = {"n": g.n, "pi_star": optimal_pebbling_number(g, prune=prune).value}
    for t in range(1, t_max + 1):
        vals[f"pi_star_{t}"] = restricted_optimal_pebbling_number(g, t, prune=prune).value
    vals["gamma"] = domination_number(g).value
    vals["gamma_R"] = roman_domination_number(g).value
    return vals


def chain_violations(vals: dict, t_max: int) -> list[str]:
    bad = []
    n, p = vals["n"], vals["pi_star"]
    if vals["pi_star_1"] != n:
        bad.append("pi*_1 != n")
    for t in range(2, t_max):
        if not vals[f"pi_star_{t}"] >= vals[f"pi_star_{t + 1}"]:
            bad.append(f"pi*_{t} < pi*_{t + 1}")
    if t_max >= 2 and not vals[f"pi_star_{t_max}"] >= p:
        bad.append(f"pi*_{t_max} < pi*")
    if t_max >= 2 and not vals["pi_star_2"] <= vals["gamma_R"]:
        bad.append("pi*_2 > gamma_R")
    if not vals["gamma"] <= vals["gamma_R"] <= 2 * vals["gamma"]:
        bad.append("gamma_R outside [gamma, 2 gamma]")
    cap = pebbling_cap(n)
    if p > cap or (t_max >= 2 and vals["pi_star_2"] > cap):
        bad.append("value above ceil(2n/3)")
    return bad


@_timed
def verify_chain(g: Graph, t_max: int = 5, name: str = "G", cap: Optional[int] = None) -> ClaimReport:
    cap = CHAIN_CAP if cap is None else cap
    if not is_connected(g):
        raise ValueError("the chain check needs a connected graph")
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds the chain cap {cap}")
    vals = chain_values(g, t_max)
    bad = chain_violations(vals, t_max)
    return ClaimReport(
        "chain",
        name,
        "pi*_1 = n; pi*_2 >= ... >= pi*_t >= pi*; pi*_2 <= gamma_R; gamma <= gamma_R <= 2 gamma; "
        "pi*, pi*_2 <= ceil(2n/3)",
        {**vals, "violations": bad},
        not bad,
    )


@_timed
def chain_scan(graphs: Iterable[tuple[str, Graph]], t_max: int = 5, label: str = "") -> ClaimReport:
    rows, failures = [], []
    for name, g in graphs:
        vals = chain_values(g, t_max)
        bad = chain_violations(vals, t_max)
        rows.append({"instance": name, **vals, "ok": not bad})
        if bad:
            failures.append({"instance": name, "violations": bad})
    return ClaimReport(
        "chain",
        label or f"{len(rows)} graphs",
        "chain inequalities, t = 1 identity and ceil(2n/3) bound on every graph",
        {"graphs": len(rows), "violations": len(failures), "failures": failures[:10]},
        not failures,
        rows=rows,
    )


# -- minimum degree ----------------------------------------------------------


def meets_two_thirds(g: Graph) -> bool:
    """delta(G) >= 2n/3 - 1, compared exactly."""
    return 3 * min_degree(g) >= 2 * g.n - 3


@_timed
def verify_min_degree_claim(
    graphs: Iterable[tuple[str, Graph]], cap: int = 10, label: str = ""
) -> ClaimReport:
    checked = skipped = 0
    rows, failures = [], []
    for name, g in graphs:
        if g.n > cap:
            raise CapExceeded(f"{name}: n={g.n} exceeds the cap {cap}")
        if not is_connected(g) or not meets_two_thirds(g):
            skipped += 1
            continue
        checked += 1
        p = optimal_pebbling_number(g).value
        p2 = restricted_optimal_pebbling_number(g, 2).value
        diam = diameter(g)
        pair = dominating_pair_witness(g)
        non_adjacent = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
        explained = p <= 3 or (pair is not None and bool(non_adjacent))
        ok = diam <= 2 and p <= 4 and p == p2 and explained
        row = {"instance": name, "n": g.n, "delta": min_degree(g), "diameter": diam,
               "pi_star": p, "pi_star_2": p2, "dominating_pair": pair, "ok": ok}
        rows.append(row)
        if not ok:
            failures.append(row)
    return ClaimReport(
        "min-degree",
        label or f"{checked + skipped} graphs",
        "delta >= 2n/3 - 1 implies diameter <= 2, pi* <= 4, pi*_2 = pi*",
        {"checked": checked, "skipped": skipped, "violations": len(failures), "failures": failures[:10]},
        not failures,
        rows=rows,
    )


# -- lemmas ------------------------------------------------------------------


@_timed
def three_pile_lemma_scan(n_max: int = 5) -> ClaimReport:
    """One vertex with 3 pebbles, the rest at most 1: if solvable, it stays
    solvable after dropping a pebble from the pile."""
    if n_max > 6:
        raise CapExceeded("three_pile_lemma_scan supports n_max <= 6")
    checked = solvable = 0
    failures = []
    for n in range(1, n_max + 1):
        for gi, g in enumerate(graph_classes(n)):
            cache: dict = {}
            for v in range(n):
                others = [x for x in range(n) if x != v]
                for bits in range(1 << len(others)):
                    d = [0] * n
                    d[v] = 3
                    for i, x in enumerate(others):
                        if bits >> i & 1:
                            d[x] = 1
                    checked += 1
                    if not is_solvable(g, d, prune=False, cache=cache):
                        continue
                    solvable += 1
                    d[v] = 2
                    if not is_solvable(g, d, prune=False, cache=cache):
                        failures.append({"graph": list(g.edges), "n": n, "pile": v})
    return ClaimReport(
        "three-pile",
        f"connected graphs n <= {n_max}",
        "solvable 3-pile distribution stays solvable with the pile reduced to 2",
        {"distributions": checked, "solvable": solvable, "violations": len(failures),
         "failures": failures[:10]},
        not failures,
    )


@_timed
def normalization_scan(n_max: int = 6) -> ClaimReport:
    checked = 0
    failures = []
    for n in range(2, n_max + 1):
        for g in graph_classes(n):
            opt = optimal_pebbling_number(g)
            d = normalize_optimal(g, opt.witness)
            again = normalize_optimal(g, d)
            checked += 1
            ok = (
                size(d) == opt.value
                and is_solvable(g, d, prune=False)
                and not stranded_vertices(g, d)
                and again == d
            )
            if not ok:
                failures.append({"graph": list(g.edges), "witness": list(opt.witness), "normalized": list(d)})
    return ClaimReport(
        "normalization",
        f"optimal witnesses, connected graphs 2 <= n <= {n_max}",
        "normalized witness: same size, solvable, every loaded vertex 2-reachable, idempotent",
        {"witnesses": checked, "violations": len(failures), "failures": failures[:10]},
        not failures,
    )


@_timed
def two_pile_scan(n_max: int = 6) -> ClaimReport:
    checked = 0
    failures = []
    for n in range(2, n_max + 1):
        for g in graph_classes(n):
            p2 = restricted_optimal_pebbling_number(g, 2).value
            pair = two_pile_witness(g)
            checked += 1
            if (p2 <= 4) != (pair is not None):
                failures.append({"graph": list(g.edges), "pi_star_2": p2, "pair": pair})
    h4_pair = two_pile_witness(C.h_family(4))
    return ClaimReport(
        "two-pile",
        f"connected graphs 2 <= n <= {n_max}, plus H_4",
        "pi*_2 <= 4 iff some {2,2} two-pile distribution is solvable; none on H_4",
        {"graphs": checked, "violations": len(failures), "failures": failures[:10],
         "h4_two_pile": h4_pair},
        not failures and h4_pair is None,
    )


@_timed
def weight_soundness_scan(n_max: int = 5, max_size: int = 4) -> ClaimReport:
    """Weight below 1 never coexists with actual reachability (all labeled graphs)."""
    checked = 0
    failures = []
    for n in range(1, n_max + 1):
        for g in labeled_graphs(n):
            scale, _ = weight_table(g)
            cache: dict = {}
            for k in range(max_size + 1):
                for d in compositions(k, n):
                    mask = reachable_mask(g, d, cache)
                    for u in range(n):
                        checked += 1
                        if weight_numerator(g, d, u) < scale and mask >> u & 1:
                            failures.append({"graph": list(g.edges), "n": n, "d": list(d), "u": u})
    return ClaimReport(
        "weight-soundness",
        f"all labeled graphs n <= {n_max}, |D| <= {max_size}",
        "W_D(u) < 1 implies u unreachable",
        {"checks": checked, "violations": len(failures), "failures": failures[:10]},
        not failures,
    )


@_timed
def pruning_differential(graphs: Iterable[tuple[str, Graph]], ts=(2, 3)) -> ClaimReport:
    checked = 0
    failures = []
    for name, g in graphs:
        pairs = [(optimal_pebbling_number(g).value, optimal_pebbling_number(g, prune=False).value)]
        for t in ts:
            pairs.append(
                (
                    restricted_optimal_pebbling_number(g, t).value,
                    restricted_optimal_pebbling_number(g, t, prune=False).value,
                )
            )
        checked += 1
        if any(a != b for a, b in pairs):
            failures.append({"instance": name, "values": pairs})
    return ClaimReport(
        "pruning",
        f"{checked} graphs",
        "pruned and unpruned solver values agree",
        {"graphs": checked, "violations": len(failures), "failures": failures[:10]},
        not failures,
    )


@_timed
def verify_reduction(graphs=None, ts=(2, 3)) -> ClaimReport:
    if graphs is None:
        graphs = [("P_2", C.path_graph(2)), ("P_3", C.path_graph(3)), ("K_3", C.complete_graph(3))]
    rows, failures = [], []
    for name, g in graphs:
        fg, _ = C.opn_to_ropn_reduction(g)
        for k in range(0, pebbling_cap(g.n) + 1):
            opn = opn_decision(g, k)
            for t in ts:
                ropn = ropn_decision(fg, t, k)
                rows.append({"instance": name, "k": k, "t": t, "opn": opn, "ropn": ropn})
                if opn != ropn:
                    failures.append(rows[-1])
    return ClaimReport(
        "reduction",
        ", ".join(name for name, _ in graphs),
        "pi*(G) <= k iff pi*_t(G.K_n) <= k",
        {"decisions": len(rows), "violations": len(failures), "failures": failures},
        not failures,
        rows=rows,
    )


def _transcripts(g: Graph, d, max_moves: int):
    """Move multisets of at most ``max_moves`` moves whose final counts are all
    non-negative (anything else is trivially infeasible)."""
    moves = sorted([Move(u, v) for u, v in g.edges] + [Move(v, u) for u, v in g.edges])
    counts = [0] * len(moves)
    bal = list(d)

    def rec(i: int, left: int):
        if min(bal, default=0) >= 0:
            yield {moves[j]: c for j, c in enumerate(counts) if c}
        if left == 0:
            return
        for j in range(i, len(moves)):
            s, t = moves[j]
            bal[s] -= 2
            bal[t] += 1
            counts[j] += 1
            # later moves add at most one pebble each to s
            if bal[s] + left - 1 >= 0:
                yield from rec(j, left - 1)
            counts[j] -= 1
            bal[s] += 2
            bal[t] -= 1

    yield from rec(0, max_moves)


@_timed
def transcript_differential(n_max: int = 5, max_size: int = 5, max_moves: int = 5) -> ClaimReport:
    """Transcript feasibility versus exhaustive ordering, on every graph class
    up to ``n_max`` and every distribution and transcript in range. Plain greedy
    saturation is tallied separately; it is known to miss some cyclic cases."""
    checked = feasible = greedy_misses = 0
    failures = []
    for n in range(1, n_max + 1):
        for g in graph_classes(n, connected=False):
            for k in range(max_size + 1):
                for d in compositions(k, n):
                    for tr in _transcripts(g, d, min(max_moves, k)):
                        tr = Counter(tr)
                        decided = transcript_feasible(g, d, tr)
                        oracle = exhaustive_feasible(g, d, tr)
                        checked += 1
                        feasible += oracle
                        greedy_misses += (greedy_schedule(g, d, tr) is not None) != oracle
                        if decided != oracle:
                            failures.append({"graph": list(g.edges), "d": list(d),
                                             "transcript": sorted((m.source, m.target, c) for m, c in tr.items())})
    return ClaimReport(
        "transcripts",
        f"all graphs n <= {n_max}, |D| <= {max_size}, <= {max_moves} moves",
        "transcript_feasible agrees with exhaustive ordering",
        {"transcripts": checked, "feasible": feasible, "disagreements": len(failures),
         "plain_greedy_disagreements": greedy_misses,
         "failures": failures[:10]},
        not failures,
    )


@_timed
def certificate_scan(graphs: Iterable[tuple[str, Graph]], ts=(0, 2)) -> ClaimReport:
    """Every solver witness converts to a certificate that verifies."""
    checked = 0
    failures = []
    for name, g in graphs:
        for t in ts:
            res = optimal_pebbling_number(g) if t == 0 else restricted_optimal_pebbling_number(g, t)
            cert = build_certificate(g, res.witness, t)
            checked += 1
            if not verify_certificate(g, cert) or cert.bound < res.value:
                failures.append({"instance": name, "t": t})
    return ClaimReport(
        "certificates",
        f"{checked} solver witnesses",
        "witness certificates verify and claim a bound >= the exact value",
        {"certificates": checked, "violations": len(failures), "failures": failures[:10]},
        not failures,
    )


# -- conjecture search -------------------------------------------------------


@_timed
def conjecture_search(
    n_range: Iterable[int],
    samples: int,
    seed: int,
    min_degree_override: Optional[int] = None,
    cap: Optional[int] = None,
) -> ClaimReport:
    """Seeded random connected graphs with delta >= ceil(n/2); tests both
    min-degree conjectures and reports any counterexample with certificates."""
    cap = SEARCH_CAP if cap is None else cap
    orders = list(n_range)
    if not orders:
        raise ValueError("empty n_range")
    for n in orders:
        if n > cap:
            raise CapExceeded(f"n={n} exceeds the search cap {cap}")
        need = ceil(n / 2) if min_degree_override is None else min_degree_override
        if need > n - 1:
            raise ValueError(f"min degree {need} is infeasible on {n} vertices")
    rng = random.Random(seed)
    rows, counterexamples = [], []
    for i in range(samples):
        n = orders[i % len(orders)]
        need = ceil(n / 2) if min_degree_override is None else min_degree_override
        g = random_connected_graph(n, rng, min_deg=need)
        opt = optimal_pebbling_number(g)
        res = restricted_optimal_pebbling_number(g, 2)
        pair = dominating_pair_witness(g)
        rows.append({"sample": i, "n": n, "edges": [list(e) for e in g.edges],
                     "pi_star": opt.value, "pi_star_2": res.value, "dominating_pair": pair})
        if opt.value != res.value or pair is None:
            counterexamples.append(
                {
                    "sample": i,
                    "graph": g.to_edge_list(),
                    "pi_star_certificate": emit_certificate(build_certificate(g, opt.witness, 0)),
                    "pi_star_2_certificate": emit_certificate(build_certificate(g, res.witness, 2)),
                    "conjecture_1": opt.value == res.value,
                    "conjecture_2": pair is not None,
                }
            )
    summary = (
        f"no counterexample among {samples} samples"
        if not counterexamples
        else f"{len(counterexamples)} counterexample(s) among {samples} samples"
    )
    return ClaimReport(
        "conjectures",
        f"seed={seed}, n in {orders}, samples={samples}",
        "delta >= n/2 implies pi*_2 = pi* and a dominating {u,v} + common-neighbor set",
        {"summary": summary, "counterexamples": counterexamples},
        not counterexamples,
        rows=rows,
    )


# -- suite -------------------------------------------------------------------


def small_graph_suite(n_max: int = 5) -> list[tuple[str, Graph]]:
    out = []
    for n in range(1, n_max + 1):
        for i, g in enumerate(graph_classes(n)):
            out.append((f"class{n}.{i}", g))
    return out


PRODUCT_INSTANCES = [
    ("P_3", lambda: C.path_graph(3), 1),
    ("P_3", lambda: C.path_graph(3), 2),
    ("P_4", lambda: C.path_graph(4), 2),
    ("C_4", lambda: C.cycle_graph(4), 2),
    ("K_3", lambda: C.complete_graph(3), 1),
]


def claim_ids() -> list[str]:
    return list(_CLAIMS)


def run_claim(claim: str, m: Optional[int] = None) -> list[ClaimReport]:
    if claim not in _CLAIMS:
        raise KeyError(f"unknown claim {claim!r}; choose from {', '.join(_CLAIMS)}")
    return _CLAIMS[claim](m)


def _claim_h_family(m):
    return [verify_h_family(m)] if m else [verify_h_family(4)]


def _claim_weights(m):
    return [verify_weight_cases(x) for x in ([m] if m else [4, 6])]


def _claim_product(m):
    reports = []
    for name, build, mm in PRODUCT_INSTANCES:
        if m and mm != m:
            continue
        for t in (2, 3):
            reports.append(verify_product_theorem(build(), mm, t, name=name))
    return reports


def _claim_chain(_m):
    graphs = [("K_5", C.complete_graph(5)), ("P_6", C.path_graph(6)), ("H_4", C.h_family(4))]
    return [verify_chain(g, name=name) for name, g in graphs] + [
        chain_scan(small_graph_suite(5), label="connected graph classes n <= 5")
    ]


def _claim_min_degree(_m):
    graphs = [(name, g) for name, g in small_graph_suite(6)]
    graphs += [(f"class7.{i}", g) for i, g in enumerate(graph_classes(7)) if meets_two_thirds(g)]
    return [verify_min_degree_claim(graphs, label="connected graph classes n <= 7")]


_CLAIMS = {
    "h-family": _claim_h_family,
    "weights": _claim_weights,
    "product": _claim_product,
    "reduction": lambda _m: [verify_reduction()],
    "chain": _claim_chain,
    "min-degree": _claim_min_degree,
    "three-pile": lambda _m: [three_pile_lemma_scan(5)],
    "normalization": lambda _m: [normalization_scan(6)],
    "two-pile": lambda _m: [two_pile_scan(6)],
    "weight-soundness": lambda _m: [weight_soundness_scan(5, 4)],
    "transcripts": lambda _m: [transcript_differential(4, 4, 4)],
    "certificates": lambda _m: [certificate_scan(small_graph_suite(5))],
}
