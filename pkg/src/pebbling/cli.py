"""Command-line entry point: ``pebbling <subcommand> ...``.

Exit codes: 0 success / yes, 1 no (decision answered negatively, or a check
failed), 2 usage error, 3 input format error, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import constructions as C
from .certificates import (
    CertificateError,
    build_certificate,
    emit_certificate,
    parse_certificate,
    verify_certificate,
)
from .engine import PebblingError, format_distribution, k_reachable, parse_distribution
from .experiments import CapExceeded, claim_ids, conjecture_search, run_claim
from .graph import Graph, GraphFormatError, parse_edge_list
from .solver import (
    opn_decision,
    optimal_pebbling_number,
    restricted_optimal_pebbling_number,
    ropn_decision,
)

EXIT_NO = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4


class InputError(Exception):
    pass


def _read_graph(args) -> Graph:
    if args.input and args.input != "-":
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"--input: {exc}") from None
    else:
        text = sys.stdin.read()
    return parse_edge_list(text)


def _read_file(path: str, flag: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{flag}: {exc}") from None


def _emit(args, value: dict, text: str) -> None:
    if args.format == "records":
        print(json.dumps(value, sort_keys=True))
    else:
        print(text)


def cmd_solve(args) -> int:
    g = _read_graph(args)
    if args.t is None:
        res = optimal_pebbling_number(g, prune=not args.no_prune, workers=args.workers)
    else:
        res = restricted_optimal_pebbling_number(g, args.t, prune=not args.no_prune, workers=args.workers)
    _emit(
        args,
        {"value": res.value, "t": args.t or 0, "witness": list(res.witness),
         "explored": res.explored, "pruned": res.pruned},
        f"{res.value}\nwitness {format_distribution(res.witness)}",
    )
    return 0


def cmd_decide(args) -> int:
    g = _read_graph(args)
    if args.t is None:
        answer = opn_decision(g, args.k, prune=not args.no_prune)
    else:
        answer = ropn_decision(g, args.t, args.k, prune=not args.no_prune)
    _emit(args, {"k": args.k, "t": args.t or 0, "answer": answer}, "yes" if answer else "no")
    return 0 if answer else EXIT_NO


def cmd_reach(args) -> int:
    g = _read_graph(args)
    d = parse_distribution(args.D, g.n)
    if not 0 <= args.v < g.n:
        raise InputError(f"-v: vertex {args.v} out of range for order {g.n}")
    ok, seq = k_reachable(g, d, args.v, args.k, prune=not args.no_prune)
    moves = [str(m) for m in seq] if ok else []
    _emit(
        args,
        {"vertex": args.v, "k": args.k, "reachable": ok, "witness": moves},
        ("yes" if ok else "no") + (f"\nwitness {' '.join(moves)}" if ok else ""),
    )
    return 0 if ok else EXIT_NO


def cmd_product(args) -> int:
    g = _read_graph(args)
    prod, _ = C.lexicographic_product(g, C.complete_graph(args.m))
    sys.stdout.write(prod.to_edge_list())
    return 0


def cmd_family(args) -> int:
    if args.name == "hm":
        if args.m is None:
            raise InputError("family hm needs -m")
        g = C.h_family(args.m)
    else:
        if args.n is None:
            raise InputError(f"family {args.name} needs -n")
        g = {"path": C.path_graph, "cycle": C.cycle_graph, "complete": C.complete_graph,
             "star": C.star_graph}[args.name](args.n)
    sys.stdout.write(g.to_edge_list())
    return 0


def cmd_reduce(args) -> int:
    g = _read_graph(args)
    fg, _ = C.opn_to_ropn_reduction(g)
    sys.stdout.write(fg.to_edge_list())
    return 0


def cmd_collapse(args) -> int:
    g = _read_graph(args)
    phi = C.parse_vertex_map(_read_file(args.map, "--map"), g.n)
    d = parse_distribution(args.D, g.n) if args.D else (0,) * g.n
    h, hd = C.collapse(g, phi, d)
    sys.stdout.write(h.to_edge_list())
    if args.D:
        print(f"# distribution {format_distribution(hd)}")
    return 0


def cmd_cert(args) -> int:
    g = _read_graph(args)
    if args.action == "emit":
        t = args.t or 0
        if args.D:
            d = parse_distribution(args.D, g.n)
        elif t:
            d = restricted_optimal_pebbling_number(g, t).witness
        else:
            d = optimal_pebbling_number(g).witness
        text = emit_certificate(build_certificate(g, d, t))
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    if not args.cert:
        raise InputError("cert verify needs --cert")
    cert = parse_certificate(_read_file(args.cert, "--cert"))
    ok = verify_certificate(g, cert)
    claim = f"pi*_{cert.restriction}" if cert.restriction else "pi*"
    print(f"{'valid' if ok else 'invalid'}: {claim}(G) <= {cert.bound}" if ok else "invalid")
    return 0 if ok else EXIT_NO


def cmd_verify_paper(args) -> int:
    claims = [args.claim] if args.claim else claim_ids()
    all_ok = True
    for claim in claims:
        for report in run_claim(claim, args.m):
            all_ok &= report.verdict
            if args.format == "records":
                print(report.to_jsonl(timings=args.timings, rows=args.rows))
            else:
                print(report.to_text(timings=args.timings))
    return 0 if all_ok else EXIT_NO


def cmd_search(args) -> int:
    report = conjecture_search(args.n, args.samples, args.seed, args.min_degree)
    if args.format == "records":
        print(report.to_jsonl(timings=args.timings, rows=args.rows))
    else:
        print(report.to_text(timings=args.timings))
    return 0 if report.verdict else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("-i", "--input", help="graph edge-list file (default: stdin)")
    src.add_argument("--stdin", action="store_true", help="read the graph from stdin")
    common.add_argument("--format", choices=("text", "records"), default="text")

    p = argparse.ArgumentParser(prog="pebbling", description="Exact graph pebbling toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="optimal (or t-restricted) pebbling number")
    s.add_argument("-t", type=int, help="restriction t (omit for unrestricted)")
    s.add_argument("--no-prune", action="store_true", help="disable the weight cutoff")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("decide", parents=[common], help="OPN / ROPN decision (exit 0 yes, 1 no)")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-t", type=int)
    s.add_argument("--no-prune", action="store_true")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("reach", parents=[common], help="k-reachability of one vertex")
    s.add_argument("-v", type=int, required=True)
    s.add_argument("-k", type=int, default=1)
    s.add_argument("-D", required=True, help="distribution as v:count,v:count,...")
    s.add_argument("--no-prune", action="store_true")
    s.set_defaults(func=cmd_reach)

    s = sub.add_parser("product", parents=[common], help="emit G.K_m")
    s.add_argument("-m", type=int, required=True)
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("family", help="emit a named graph")
    s.add_argument("name", choices=("hm", "path", "cycle", "complete", "star"))
    s.add_argument("-m", type=int, help="H_m parameter")
    s.add_argument("-n", type=int, help="size for path/cycle/complete/star")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("reduce", parents=[common], help="emit the ROPN instance G.K_n")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("collapse", parents=[common], help="quotient by a vertex map")
    s.add_argument("--map", required=True, help="file of 'g h' lines")
    s.add_argument("-D", help="distribution to collapse")
    s.set_defaults(func=cmd_collapse)

    s = sub.add_parser("cert", parents=[common], help="emit or verify a solvability certificate")
    s.add_argument("action", choices=("emit", "verify"))
    s.add_argument("-t", type=int, help="restriction recorded in the certificate (0 = none)")
    s.add_argument("-D", help="distribution to certify (default: a solver optimum)")
    s.add_argument("-o", "--output", help="write the certificate here instead of stdout")
    s.add_argument("--cert", help="certificate file to verify")
    s.set_defaults(func=cmd_cert)

    s = sub.add_parser("verify-paper", help="re-run the claim checks")
    s.add_argument("--claim", choices=claim_ids())
    s.add_argument("-m", type=int, help="H_m parameter / product m filter")
    s.add_argument("--format", choices=("text", "records"), default="text")
    s.add_argument("--timings", action="store_true")
    s.add_argument("--rows", action="store_true", help="include per-instance records")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("search", help="seeded search for counterexamples to the min-degree conjectures")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--n", type=int, nargs="+", default=[6])
    s.add_argument("--min-degree", type=int, help="override the ceil(n/2) degree floor")
    s.add_argument("--format", choices=("text", "records"), default="text")
    s.add_argument("--timings", action="store_true")
    s.add_argument("--rows", action="store_true")
    s.set_defaults(func=cmd_search)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphFormatError, CertificateError, PebblingError, C.ConstructionError,
            InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
