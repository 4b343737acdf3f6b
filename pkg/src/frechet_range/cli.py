"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_SELFTEST = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("output sizes must be non-negative integers")
    return values


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="frechet-range", description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=["compiled", "python"], default=None,
                   help="kernel backend (default: compiled when available)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("query", help="answer queries against a database")
    q.add_argument("--db", required=True, type=Path, help="database manifest")
    q.add_argument("--queries", required=True, type=Path, help="query file")
    q.add_argument("--threads", type=_positive, default=1)
    q.add_argument("--capacity", type=_positive, default=16, help="index leaf capacity")
    q.add_argument("--format", choices=["text", "jsonl"], default="text")
    q.add_argument("--timings", type=Path, help="write per-query JSON-lines timing records here")
    q.add_argument("--exact", choices=["recursive", "standard"], default="recursive")

    b = sub.add_parser("bench", help="timed random queries with fixed output sizes")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--db", type=Path, help="database manifest")
    src.add_argument("--synthetic", type=int, metavar="COUNT", help="generate COUNT curves instead")
    b.add_argument("--profile", default="clustered-paths", help="synthetic profile")
    b.add_argument("--k", type=_int_list, default=[0, 1, 10, 100, 1000])
    b.add_argument("--per-k", type=_positive, default=100,
                   help="queries per output size")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--capacity", type=_positive, default=16)
    b.add_argument("--threads", type=_positive, default=1, help="accepted for symmetry; bench runs serially")
    b.add_argument("--format", choices=["text", "jsonl"], default="text")
    b.add_argument("--out", type=Path, help="write the JSON report here")
    b.add_argument("--records", type=Path, help="write per-query JSON-lines records here")
    b.add_argument("--warmup", action="store_true", help="run each query once before timing")

    s = sub.add_parser("selftest", help="randomized oracle-equivalence checks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iterations", type=_positive, default=1000)
    s.add_argument("--repro", type=Path, default=Path("selftest-failures.json"),
                   help="where failing cases are written")
    s.add_argument("--mutate-full-block", type=float, default=1.0, help=argparse.SUPPRESS)

    g = sub.add_parser("gen", help="write a synthetic database (and optional queries)")
    g.add_argument("--out", required=True, type=Path, help="output directory")
    g.add_argument("--count", type=int, default=1000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--profile", default="clustered-paths")
    g.add_argument("--queries", type=int, default=0, metavar="N",
                   help="also write N exact-k queries (cycling over --k)")
    g.add_argument("--k", type=_int_list, default=[0, 1, 10, 100])
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    from .dataset import DataError

    try:
        return _COMMANDS[args.command](args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _cmd_query(args) -> int:
    from .dataset import load_database, load_queries
    from .engine import Engine

    t0 = time.perf_counter()
    db = load_database(args.db)
    queries = load_queries(args.queries)
    load_s = time.perf_counter() - t0
    engine = Engine(db, capacity=args.capacity, backend=args.backend)
    logging.getLogger(__name__).info("loaded %d curves and %d queries in %.3fs; index built in %.3fs",
                                     len(db), len(queries), load_s, engine.build_seconds)
    sidecar = open(args.timings, "w", encoding="utf-8") if args.timings else None
    out = sys.stdout
    try:
        for res in engine.run(queries, threads=args.threads, exact=args.exact):
            if args.format == "text":
                out.write(res.line() + "\n")
            else:
                out.write(json.dumps({"index": res.index, "count": len(res.matches),
                                      "matches": res.matches}) + "\n")
            if sidecar:
                rec = res.to_record()
                rec.pop("matches")
                sidecar.write(json.dumps(rec) + "\n")
    finally:
        if sidecar:
            sidecar.close()
    return EXIT_OK


def _cmd_bench(args) -> int:
    from .bench import StarvationError, run_bench
    from .dataset import generate_synthetic, load_database
    from .engine import Engine

    t0 = time.perf_counter()
    if args.db is not None:
        db = load_database(args.db)
    else:
        db = generate_synthetic(args.seed, args.synthetic, args.profile)
    load_s = time.perf_counter() - t0
    engine = Engine(db, capacity=args.capacity, backend=args.backend)
    try:
        report = run_bench(engine, args.k, args.per_k, args.seed, warmup=args.warmup)
    except StarvationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    if args.format == "text":
        print(f"database: {len(db)} curves (load {load_s:.2f}s, index build "
              f"{engine.build_seconds:.3f}s, backend {report.backend})")
        print(report.table())
    else:
        print(json.dumps(report.to_dict()))
    if args.out:
        report.write(args.out)
    if args.records:
        report.write_records(args.records)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    res = run_selftest(args.seed, args.iterations, backend=args.backend,
                       mutate_full_block=args.mutate_full_block)
    print(res.summary())
    if not res.ok:
        res.write_repro(args.repro)
        print(f"failing cases written to {args.repro}", file=sys.stderr)
        return EXIT_SELFTEST
    return EXIT_OK


def _cmd_gen(args) -> int:
    from .dataset import generate_synthetic, save_database, save_queries
    from .engine import Engine, generate_query

    db = generate_synthetic(args.seed, args.count, args.profile)
    manifest = save_database(db, args.out)
    print(f"wrote {len(db)} curves to {manifest}")
    if args.queries:
        engine = Engine(db)
        rng = np.random.default_rng(args.seed + 1)
        queries = []
        attempts = 0
        while len(queries) < args.queries:
            k = args.k[len(queries) % len(args.k)]
            attempts += 1
            if attempts > 50 * args.queries:
                print(f"error: could not generate queries with k={k}", file=sys.stderr)
                return EXIT_DATA
            q = generate_query(engine, k, rng)
            if q is not None:
                queries.append(q)
        path = save_queries(queries, args.out / "queries" / "queries.txt")
        print(f"wrote {len(queries)} queries to {path}")
    return EXIT_OK


_COMMANDS = {
    "query": _cmd_query,
    "bench": _cmd_bench,
    "selftest": _cmd_selftest,
    "gen": _cmd_gen,
}


if __name__ == "__main__":
    sys.exit(main())
