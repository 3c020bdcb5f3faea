"""Command line interface: ``bookshelf <subcommand> ...``.

Exit codes: 0 success, 1 domain error (JSON object on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from .augment import is_three_connected, normalize, planar_skeleton, separation_pairs
from .bench import FAMILIES, bench_scaling, rows_to_csv
from .formats import atomic_write, book_from_json, book_to_json, dumps_embedding, loads_embedding
from .generators import (
    gen_cycle,
    gen_extended_wheel,
    gen_k4,
    gen_k5,
    gen_k6,
    gen_random_1planar,
    gen_separated,
    gen_triangulation,
)
from .graph import EmbeddingError, require_valid
from .peel import extract_two_level, level_decompose
from .pipeline import (
    HAMILTON_SEARCH_LIMIT,
    NotHamiltonianCycle,
    embed_3connected,
    embed_general,
    embed_hamiltonian,
    find_hamiltonian_cycle,
)
from .render import RenderSpec, render_arc_diagram
from .verify import BudgetExhausted, check_book_embedding, exact_book_thickness

NAMED = {"k4": gen_k4, "k5": gen_k5, "k6": gen_k6}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _report(obj: dict, fmt: str, out: str | None = None) -> None:
    if fmt == "json":
        _emit(json.dumps(obj, sort_keys=True) + "\n", out)
    else:
        lines = [f"{k}: {v if not isinstance(v, (dict, list)) else json.dumps(v)}" for k, v in obj.items()]
        _emit("\n".join(lines) + "\n", out)


def _seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    return int(os.environ.get("BOOKSHELF_SEED", "0"))


def _read_cycle(path: str) -> list[int]:
    text = _read(path).strip()
    try:
        data = json.loads(text) if text.startswith("[") else [int(t) for t in text.split()]
    except ValueError as exc:
        raise UsageError(f"cannot parse cycle file {path}: {exc}") from None
    return [int(v) for v in data]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_embed(args) -> int:
    emb = loads_embedding(_read(args.input))
    mode = args.mode
    if mode == "hamiltonian":
        if args.cycle:
            cycle = _read_cycle(args.cycle)
        elif emb.n > HAMILTON_SEARCH_LIMIT:
            raise UsageError(f"--mode hamiltonian needs --cycle when n > {HAMILTON_SEARCH_LIMIT} (n = {emb.n})")
        elif not args.find_cycle:
            raise UsageError("--mode hamiltonian needs --cycle or --find-cycle")
        else:
            require_valid(emb)
            cycle = find_hamiltonian_cycle(emb)
            if cycle is None:
                raise NotHamiltonianCycle("the planar skeleton has no Hamiltonian cycle")
        book = embed_hamiltonian(emb, cycle, check=args.check)
    elif mode == "3conn":
        book = embed_3connected(emb, check=args.check)
    elif mode == "general":
        book = embed_general(emb, check=args.check)
    else:
        require_valid(emb)
        norm, _ = normalize(emb, tags=False)
        if separation_pairs(norm):
            book = embed_general(emb, check=args.check)
        else:
            book = embed_3connected(emb, check=args.check)
    _report(book_to_json(book), "json" if args.out or args.format == "json" else "text", args.out)
    return 0


MAX_REPORTED_CONFLICTS = 20


def cmd_verify(args) -> int:
    emb = loads_embedding(_read(args.input))
    try:
        book = book_from_json(json.loads(_read(args.book)))
    except json.JSONDecodeError as exc:
        raise EmbeddingError(f"invalid book JSON: {exc}") from None
    rep = check_book_embedding(emb.graph, book)
    body = rep.to_json()
    body["ok"] = rep.ok
    body["page_count"] = book.page_count
    if not rep.ok:
        body["conflict_count"] = len(rep.conflicts)
        body["conflicts"] = body["conflicts"][:MAX_REPORTED_CONFLICTS]
        first = rep.conflicts[0] if rep.conflicts else None
        msg = f"conflict {list(first.e)} x {list(first.f)} on {first.page}" if first else rep.coverage[0]
        _fail("ConflictReport", msg, body)
        return 1
    _report(body, args.format)
    return 0


def cmd_pagenum(args) -> int:
    emb = loads_embedding(_read(args.input))
    res = exact_book_thickness(
        emb.graph,
        max_k=args.max_k,
        budget_nodes=args.budget_nodes,
        budget_secs=args.budget_secs,
        graph_id=args.input,
    )
    _report(res.to_json(), args.format, args.out)
    return 0


def cmd_gen(args) -> int:
    if args.family == "xw":
        emb = gen_extended_wheel(args.k)
    elif args.family == "random":
        emb = gen_random_1planar(args.n, args.density, _seed(args.seed))
    elif args.family == "tri":
        emb = gen_triangulation(args.n, _seed(args.seed))
    elif args.family == "sep":
        emb = gen_separated(args.n, args.pieces, args.density, _seed(args.seed))
    elif args.family == "cycle":
        emb = gen_cycle(args.n)
    else:
        emb = NAMED[args.family]()
    fmt = "json" if args.format == "json" else "text"
    _emit(dumps_embedding(emb, fmt), args.out)
    return 0


def cmd_peel(args) -> int:
    emb = loads_embedding(_read(args.input))
    norm, tags = normalize(emb)
    sk = planar_skeleton(norm)
    ld = level_decompose(sk)
    subs = extract_two_level(norm, sk, ld)
    body = {
        "n": norm.n,
        "augmented_edges": norm.m - emb.m,
        "depth": ld.depth,
        "levels": ld.level,
        "regions": [
            {
                "id": r.id,
                "level": r.level,
                "cycle": r.cycle,
                "parent": r.parent,
                "inner": s.inner,
                "owned_edges": len(s.edges),
                "crossings": len(s.crossings),
            }
            for r, s in zip(ld.regions, subs)
        ],
        "crossing_tags": {str(k): v for k, v in sorted(tags.items())},
    }
    _report(body, args.format, args.out)
    return 0


def cmd_augment(args) -> int:
    emb = loads_embedding(_read(args.input))
    norm, tags = normalize(emb)
    pairs = separation_pairs(norm)
    if args.out:
        atomic_write(args.out, dumps_embedding(norm, "json" if args.out.endswith(".json") else "text"))
    body = {
        "n": norm.n,
        "edges_before": emb.m,
        "edges_after": norm.m,
        "crossing_tags": {str(k): v for k, v in sorted(tags.items())},
        "separation_pairs": [[p.u, p.v] for p in pairs],
        "three_connected": is_three_connected(norm),
    }
    _report(body, args.format)
    return 0


def cmd_render(args) -> int:
    emb = loads_embedding(_read(args.input))
    try:
        book = book_from_json(json.loads(_read(args.book)))
    except json.JSONDecodeError as exc:
        raise EmbeddingError(f"invalid book JSON: {exc}") from None
    svg = render_arc_diagram(emb.graph, book, RenderSpec(spacing=args.spacing), force=args.force)
    _emit(svg, args.out)
    return 0


def cmd_bench(args) -> int:
    rows = bench_scaling(args.family, args.sizes, runs=args.runs, seed=_seed(args.seed))
    _emit(rows_to_csv(rows), args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="json", help="report encoding")
    common.add_argument("--out", help="write the result here (atomically) instead of stdout")
    p = argparse.ArgumentParser(prog="bookshelf", description="Book embeddings of 1-planar graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("embed", parents=[common], help="compute a book embedding")
    s.add_argument("input", help="embedding file (text or JSON), - for stdin")
    s.add_argument("--mode", choices=("auto", "3conn", "general", "hamiltonian"), default="auto")
    s.add_argument("--cycle", help="Hamiltonian cycle of the planar skeleton (whitespace or JSON list)")
    s.add_argument("--find-cycle", action="store_true", help=f"search a cycle exhaustively (n <= {HAMILTON_SEARCH_LIMIT})")
    s.add_argument("--check", dest="check", action="store_true", default=True)
    s.add_argument("--no-check", dest="check", action="store_false")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("verify", parents=[common], help="check a book embedding")
    s.add_argument("input")
    s.add_argument("book", help="book JSON as written by embed")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("pagenum", parents=[common], help="exact book thickness of a small graph")
    s.add_argument("input")
    s.add_argument("--max-k", type=int, default=8)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-secs", type=float)
    s.set_defaults(func=cmd_pagenum)

    s = sub.add_parser("gen", parents=[common], help="generate an embedding")
    g = s.add_subparsers(dest="family", required=True)
    x = g.add_parser("xw", parents=[common])
    x.add_argument("--k", type=int, required=True)
    for name in ("random", "tri", "sep"):
        x = g.add_parser(name, parents=[common])
        x.add_argument("--n", type=int, required=True)
        x.add_argument("--seed", type=int)
        if name != "tri":
            x.add_argument("--density", type=float, default=0.5)
        if name == "sep":
            x.add_argument("--pieces", type=int, default=3)
    x = g.add_parser("cycle", parents=[common])
    x.add_argument("--n", type=int, required=True)
    for name in NAMED:
        g.add_parser(name, parents=[common])
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("peel", parents=[common], help="levels and 2-level subgraphs")
    s.add_argument("input")
    s.set_defaults(func=cmd_peel)

    s = sub.add_parser("augment", parents=[common], help="normal planar-maximal augmentation")
    s.add_argument("input")
    s.set_defaults(func=cmd_augment)

    s = sub.add_parser("render", parents=[common], help="SVG arc diagram")
    s.add_argument("input")
    s.add_argument("book")
    s.add_argument("--force", action="store_true", help="draw invalid embeddings, conflicts in red")
    s.add_argument("--spacing", type=float, default=24.0)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("bench", parents=[common], help="scaling benchmark (CSV)")
    s.add_argument("--family", choices=FAMILIES, default="xw")
    s.add_argument("--sizes", type=int, nargs="+", default=[10000, 20000, 40000, 80000])
    s.add_argument("--runs", type=int, default=5)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_bench)
    return p


def _fail(kind: str, message: str, detail: dict | None = None) -> None:
    body = {"error": kind, "message": message}
    if detail is not None:
        body["detail"] = detail
    sys.stderr.write(json.dumps(body, sort_keys=True) + "\n")


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"bookshelf: error: {exc}\n")
        return 2
    except BudgetExhausted as exc:
        _fail(type(exc).__name__, str(exc), {"lower": exc.lower, "upper": exc.upper, "nodes": exc.nodes})
        return 1
    except (EmbeddingError, OSError, ValueError) as exc:
        _fail(type(exc).__name__, str(exc))
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
