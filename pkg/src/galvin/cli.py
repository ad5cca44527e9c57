"""Command-line front end: ``galvin <command> ...``.

Exit codes: 0 success, 1 negative answer (improper witness, refuted search),
2 unreadable input, 3 scale limit or unverified (cycle budget spent),
4 search budget exhausted, 5 kernel missing during list colouring,
6 construction or command precondition violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from . import constructions as cons
from .blocks import BlockKind, classify_blocks
from .errors import GalvinError, KernelNotFound, PreconditionError, ScaleLimitError
from .formats import (
    FormatError,
    graph_from_json,
    graph_to_json,
    lists_from_json,
    load_json,
    orientation_to_dot,
    witness_from_json,
)
from .graph import MultiGraph
from .listcolour import list_edge_colour, verify_list_colouring
from .orientation import DEFAULT_CYCLE_BUDGET, galvin_orient
from .search import DEFAULT_BUDGET, ProgressLogger, Status, min_k, search_proper

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_UNVERIFIED = 3
EXIT_BUDGET = 4
EXIT_KERNEL = 5
EXIT_PRECONDITION = 6

log = logging.getLogger("galvin")


class _Exit(Exception):
    def __init__(self, code: int, payload: dict) -> None:
        super().__init__(payload.get("error", ""))
        self.code = code
        self.payload = payload


def _emit(obj: dict, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _error(code: int, exc: Exception) -> _Exit:
    return _Exit(code, {"error": str(exc), "type": type(exc).__name__})


def _read_graph(path: str | None) -> MultiGraph:
    if not path:
        raise _Exit(EXIT_PRECONDITION, {"error": "--graph is required", "type": "UsageError"})
    try:
        return graph_from_json(load_json(path))
    except FormatError as exc:
        raise _error(EXIT_PARSE, exc) from None


def _read_witness(path: str | None, g: MultiGraph) -> cons.Witness:
    if not path:
        raise _Exit(EXIT_PRECONDITION, {"error": "--witness is required", "type": "UsageError"})
    try:
        w = witness_from_json(load_json(path))
    except FormatError as exc:
        raise _error(EXIT_PARSE, exc) from None
    if len(w.colouring) != g.edge_count or len(w.partition) != g.vertex_count:
        raise _Exit(EXIT_PARSE, {"error": "witness does not match graph size", "type": "FormatError"})
    return w


def _verdict_code(verdict: bool | None) -> int:
    if verdict is None:
        return EXIT_UNVERIFIED
    return EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_construct(args: argparse.Namespace) -> int:
    generated = None
    try:
        if args.kind == "clique":
            if args.n is None:
                raise PreconditionError("construct clique needs --n")
            generated = cons.complete_graph(args.n)
            witness = cons.construct_clique(args.n)
        elif args.kind == "petersen":
            generated = cons.petersen()
            res = search_proper(generated, 4, budget=args.budget, jobs=args.jobs)
            if res.witness is None:
                raise _Exit(EXIT_BUDGET, {"error": "search did not finish", "outcome": res.to_json()})
            witness = res.witness
        else:
            g = _read_graph(args.graph)
            build = {
                "bipartite": cons.construct_bipartite,
                "bip-plus-edge": cons.construct_bip_plus_edge,
                "no-long-odd": cons.construct_no_long_odd,
            }[args.kind]
            witness = build(g)
        g = generated if generated is not None else g
        report = witness.verify(g, budget=args.cycle_budget)
    except PreconditionError as exc:
        raise _error(EXIT_PRECONDITION, exc) from None
    except ScaleLimitError as exc:
        raise _error(EXIT_UNVERIFIED, exc) from None
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(witness.to_json(), fh)
            fh.write("\n")
    if args.graph_out and generated is not None:
        with open(args.graph_out, "w") as fh:
            json.dump(graph_to_json(generated), fh)
            fh.write("\n")
    payload = {"witness": witness.to_json(), "report": report.to_json()}
    if generated is not None:
        payload["graph"] = graph_to_json(generated)
    _emit(payload)
    return _verdict_code(report.verdict)


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    w = _read_witness(args.witness, g)
    try:
        report = w.verify(g, budget=args.cycle_budget)
    except ScaleLimitError as exc:
        raise _error(EXIT_UNVERIFIED, exc) from None
    except GalvinError as exc:
        raise _error(EXIT_PARSE, exc) from None
    _emit(report.to_json(), args.out)
    return _verdict_code(report.verdict)


def cmd_search(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    progress = ProgressLogger() if args.progress else None
    if args.min_k:
        if args.k_max is None:
            raise _Exit(EXIT_PRECONDITION, {"error": "--min-k needs --k-max", "type": "UsageError"})
        try:
            res = min_k(g, args.k_max, budget=args.budget, jobs=args.jobs)
        except PreconditionError as exc:
            raise _error(EXIT_PRECONDITION, exc) from None
        _emit(res.to_json(), args.out)
    else:
        if args.k is None:
            raise _Exit(EXIT_PRECONDITION, {"error": "--k or --min-k is required", "type": "UsageError"})
        res = search_proper(g, args.k, budget=args.budget, jobs=args.jobs, progress=progress)
        _emit(res.to_json(), args.out)
    return {Status.FOUND: EXIT_OK, Status.REFUTED: EXIT_NEGATIVE, Status.BUDGET_EXHAUSTED: EXIT_BUDGET}[
        res.status
    ]


def cmd_list_colour(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    w = _read_witness(args.witness, g)
    if args.lists:
        try:
            lists = lists_from_json(load_json(args.lists))
        except FormatError as exc:
            raise _error(EXIT_PARSE, exc) from None
    else:
        rng = random.Random(args.seed)
        universe = args.universe or 2 * w.k
        if universe < w.k:
            raise _Exit(EXIT_PRECONDITION, {"error": "--universe smaller than k", "type": "UsageError"})
        lists = [sorted(rng.sample(range(1, universe + 1), w.k)) for _ in range(g.edge_count)]
    if not args.trust:
        report = w.verify(g, budget=args.cycle_budget)
        if report.verdict is not True:
            _emit({"error": "witness is not a proper Galvin orientation", "report": report.to_json()})
            return _verdict_code(report.verdict)
    o = galvin_orient(g, w.partition, w.colouring)
    try:
        assignment = list_edge_colour(g, o, lists, k=w.k)
    except KernelNotFound as exc:
        raise _Exit(EXIT_KERNEL, {"error": str(exc), "nodes": sorted(exc.nodes)}) from None
    except PreconditionError as exc:
        raise _error(EXIT_PRECONDITION, exc) from None
    ok = verify_list_colouring(g, lists, assignment)
    _emit({"colours": assignment, "lists": [sorted(x) for x in lists], "valid": ok}, args.out)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_export_dot(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    w = _read_witness(args.witness, g)
    try:
        o = galvin_orient(g, w.partition, w.colouring)
    except GalvinError as exc:
        raise _error(EXIT_PARSE, exc) from None
    text = orientation_to_dot(o)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_blocks(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    try:
        dec = classify_blocks(g)
    except PreconditionError as exc:
        raise _error(EXIT_PRECONDITION, exc) from None
    blocks = []
    for b in dec:
        entry = {"kind": b.kind.value, "vertices": sorted(b.vertices), "edges": list(b.edges)}
        if b.kind is BlockKind.TYPE_T:
            entry["spine"] = b.spine
            entry["spikes"] = sorted(b.spikes)
        blocks.append(entry)
    _emit({"blocks": blocks, "long_odd_cycle_free": not dec.unclassified}, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="galvin", description="Galvin orientations of line graphs")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, witness: bool = False) -> None:
        p.add_argument("--graph", help="graph JSON file")
        if witness:
            p.add_argument("--witness", help="witness JSON file")
        p.add_argument("--out", help="also write the JSON result here")
        p.add_argument("--cycle-budget", type=int, default=DEFAULT_CYCLE_BUDGET,
                       help="step budget for the odd-cycle check")

    p = sub.add_parser("construct", help="build a witness from one of the constructions")
    p.add_argument("kind", choices=["bipartite", "bip-plus-edge", "clique", "no-long-odd", "petersen"])
    common(p)
    p.add_argument("--n", type=int, help="clique order for 'clique'")
    p.add_argument("--graph-out", help="write the generated graph (clique, petersen) here")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a witness for properness")
    common(p, witness=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive search for a proper Galvin orientation")
    common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--min-k", action="store_true", help="find the least k up to --k-max")
    p.add_argument("--k-max", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--progress", action="store_true", help="log progress (with -v)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("list-colour", help="colour edges from lists using a proper witness")
    common(p, witness=True)
    p.add_argument("--lists", help="lists JSON file; random lists of size k if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--universe", type=int, help="random lists draw from 1..N (default 2k)")
    p.add_argument("--trust", action="store_true", help="skip verifying the witness first")
    p.set_defaults(func=cmd_list_colour)

    p = sub.add_parser("export-dot", help="DOT rendering of the Galvin orientation")
    p.add_argument("--graph")
    p.add_argument("--witness")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("blocks", help="block decomposition with Maffray classification")
    p.add_argument("--graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_blocks)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _Exit as exc:
        print(json.dumps(exc.payload, indent=2))
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
