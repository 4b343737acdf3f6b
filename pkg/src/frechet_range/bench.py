"""Benchmark harness: random queries with a fixed output size, timed per phase."""

from __future__ import annotations

import json
import logging
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _backend
from .dataset import Query
from .engine import Engine, QueryResult, generate_query

log = logging.getLogger(__name__)

__all__ = ["ABLATIONS", "PHASES", "KRow", "BenchReport", "StarvationError", "run_bench", "summarize_records"]

#: Ablated pipelines, as keyword overrides of :meth:`Engine.query`.
ABLATIONS = {
    "no_greedy": {"use_greedy": False},
    "no_negative": {"use_negative": False},
    "standard_exact": {"exact": "standard"},
}
PHASES = ("total", "index", "greedy", "negative", "exact")

_LABELS = {
    "total": "total time",
    "index": "time for index",
    "greedy": "time for greedy filter",
    "negative": "time for negative filter",
    "exact": "time for exact decider",
    "no_greedy": "total without greedy filter",
    "no_negative": "total without negative filter",
    "standard_exact": "total with standard decider",
}


class StarvationError(RuntimeError):
    """No query with the requested output size could be generated."""

    def __init__(self, k: int, attempts: int):
        super().__init__(f"could not generate a query with exactly k={k} results "
                         f"after {attempts} random curves")
        self.k = k


def _ms(values: Sequence[float]) -> tuple[float, float]:
    # microseconds in, (mean, population stddev) in milliseconds out
    if not values:
        return 0.0, 0.0
    return statistics.fmean(values) / 1e3, statistics.pstdev(values) / 1e3


@dataclass
class KRow:
    k: int
    queries: int
    phases: dict[str, tuple[float, float]]
    ablations: dict[str, tuple[float, float]]
    false_positives: tuple[float, float]
    rejected: int = 0

    def ratio(self, ablation: str) -> float:
        base = self.phases["total"][0]
        return self.ablations[ablation][0] / base if base > 0 else float("nan")


@dataclass
class BenchReport:
    """Table of per-k means and standard deviations (milliseconds)."""

    rows: list[KRow]
    database_size: int
    build_seconds: float
    backend: str
    records: list[dict] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "database_size": self.database_size,
            "build_seconds": self.build_seconds,
            "backend": self.backend,
            "rows": [
                {
                    "k": r.k,
                    "queries": r.queries,
                    "rejected": r.rejected,
                    "phases_ms": {p: list(v) for p, v in r.phases.items()},
                    "ablations_ms": {a: list(v) for a, v in r.ablations.items()},
                    "false_positives": list(r.false_positives),
                }
                for r in self.rows
            ],
        }

    def table(self) -> str:
        head = ["output size k:"] + [str(r.k) for r in self.rows]
        body = [head]
        for p in PHASES:
            body.append([_LABELS[p] + ":"] + [_pm(*r.phases[p], " ms") for r in self.rows])
        for a in ABLATIONS:
            body.append([_LABELS[a] + ":"] + [_pm(*r.ablations[a], " ms") for r in self.rows])
        body.append(["# false positives of index:"] + [_pm(*r.false_positives) for r in self.rows])
        body.append(["queries:"] + [str(r.queries) for r in self.rows])
        widths = [max(len(row[c]) for row in body) for c in range(len(head))]
        lines = []
        for row in body:
            lines.append(" | ".join(cell.ljust(w) if c == 0 else cell.rjust(w)
                                    for c, (cell, w) in enumerate(zip(row, widths))))
        lines.insert(1, "-+-".join("-" * w for w in widths))
        return "\n".join(lines)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    def write_records(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for rec in self.records:
                fh.write(json.dumps(rec) + "\n")


def _pm(mean: float, std: float, unit: str = "") -> str:
    return f"{mean:.3f} ± {std:.3f}{unit}"


def summarize_records(records: Sequence[dict]) -> dict[int, KRow]:
    """Recompute the per-k rows from per-query sidecar records."""
    by_k: dict[int, list[dict]] = {}
    for rec in records:
        by_k.setdefault(rec["k"], []).append(rec)
    rows = {}
    for k, recs in sorted(by_k.items()):
        rows[k] = KRow(
            k=k,
            queries=len(recs),
            phases={p: _ms([r["time_" + p] for r in recs]) for p in PHASES},
            ablations={a: _ms([r["ablations"][a] for r in recs]) for a in ABLATIONS},
            false_positives=_fp([r["false_positives"] for r in recs]),
        )
    return rows


def _fp(values: Sequence[int]) -> tuple[float, float]:
    if not values:
        return 0.0, 0.0
    return statistics.fmean(values), statistics.pstdev(values)


def _record(k: int, q: Query, full: QueryResult, ablated: dict[str, QueryResult]) -> dict:
    rec = full.to_record()
    rec.pop("matches")
    rec["k"] = k
    rec["delta"] = q.delta
    rec["query_curve"] = str(q.curve.id)
    rec["ablations"] = {a: r.time_total for a, r in ablated.items()}
    return rec


def run_bench(engine: Engine, ks: Sequence[int], queries_per_k: int, seed: int, *,
              max_attempts_factor: int = 20, warmup: bool = False) -> BenchReport:
    """Generate ``queries_per_k`` exact-``k`` queries per ``k`` and time every pipeline variant.

    Raises
    ------
    StarvationError
        When too many random curves in a row admit no threshold with exactly ``k`` results.
    AssertionError
        When an ablated pipeline disagrees with the full pipeline.
    """
    rng = np.random.default_rng(seed)
    rows = []
    records: list[dict] = []
    for k in ks:
        queries: list[Query] = []
        rejected = 0
        limit = max_attempts_factor * max(queries_per_k, 1)
        while len(queries) < queries_per_k:
            if rejected >= limit:
                raise StarvationError(k, rejected + len(queries))
            q = generate_query(engine, k, rng)
            if q is None:
                rejected += 1
            else:
                queries.append(q)
        log.info("k=%d: %d queries generated (%d rejected)", k, len(queries), rejected)
        krecs = []
        for i, q in enumerate(queries):
            if warmup:
                engine.query(q.curve, q.delta)
            # the first run of a query pays for cold caches, so rotate which variant goes first
            variants = [(None, {})] + list(ABLATIONS.items())
            shift = i % len(variants)
            runs = {}
            for name, opts in variants[shift:] + variants[:shift]:
                runs[name] = engine.query(q.curve, q.delta, index=i, **opts)
            full = runs.pop(None)
            ablated = {a: runs[a] for a in ABLATIONS}
            for a, r in ablated.items():
                if r.matches != full.matches:
                    raise AssertionError(
                        f"ablation {a} changed the answer of query {i} at k={k}: "
                        f"{len(r.matches)} vs {len(full.matches)} results")
            if len(full.matches) != k:
                raise AssertionError(f"query {i} at k={k} returned {len(full.matches)} results")
            krecs.append(_record(k, q, full, ablated))
        row = summarize_records(krecs)[k] if krecs else KRow(
            k, 0, {p: (0.0, 0.0) for p in PHASES}, {a: (0.0, 0.0) for a in ABLATIONS}, (0.0, 0.0))
        row.rejected = rejected
        rows.append(row)
        records.extend(krecs)
    return BenchReport(rows, len(engine), engine.build_seconds,
                       "compiled" if engine.kernels is _backend.compiled else "python", records)


def time_call(fn, *args, repeat: int = 3) -> float:
    """Best-of-``repeat`` wall time of ``fn(*args)`` in seconds."""
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best
