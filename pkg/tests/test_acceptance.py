"""Acceptance criteria, each at its stated tolerance.

One PASS/FAIL line per criterion is printed in the "acceptance criteria"
section of the pytest summary.
"""

import math
import time

import numpy as np
import pytest

from conftest import record_acceptance
from frechet_range import (
    Engine,
    FilterVerdict,
    RecursionStats,
    decide_recursive,
    decide_standard,
    generate_query,
    generate_synthetic,
    greedy_filter,
    lb_frechet,
    naive_scan,
    negative_filter,
)
from frechet_range.bench import ABLATIONS, PHASES, run_bench
from frechet_range.dataset import MAX_VERTICES, MIN_VERTICES
from frechet_range.decider import COMPLEXITY_CONSTANT, complexity_bound
from frechet_range.freespace import estimate_distance
from frechet_range.fuzz import DELTA_FACTORS, corpus, tent_pair
from frechet_range.index import SpatialIndex

CORPUS_PAIRS = 2000          # x 5 factors = 10,000 triples
BENCH_SIZE = 20000
BENCH_KS = (0, 1, 10, 100)
BENCH_PER_K = 60


@pytest.fixture(scope="module")
def fuzz_results():
    t0 = time.perf_counter()
    rows = []
    for t in corpus(2024, CORPUS_PAIRS, max_vertices=50, factors=DELTA_FACTORS):
        stats = RecursionStats()
        rows.append(dict(
            n=len(t.pi), m=len(t.sigma),
            standard=decide_standard(t.pi, t.sigma, t.delta),
            recursive=decide_recursive(t.pi, t.sigma, t.delta, stats),
            greedy=greedy_filter(t.pi, t.sigma, t.delta),
            negative=[negative_filter(t.pi, t.sigma, t.delta), negative_filter(t.sigma, t.pi, t.delta)],
            work=stats.work,
            visits=stats.visits,
        ))
    return rows, time.perf_counter() - t0


def test_criterion_1_oracle_equivalence(fuzz_results):
    rows, seconds = fuzz_results
    assert len(rows) == 10000
    assert all(2 <= r["n"] <= 50 and 2 <= r["m"] <= 50 for r in rows)
    agree = sum(r["standard"] == r["recursive"] for r in rows)
    ok = agree == len(rows)
    print(record_acceptance(1, "recursive = standard decider", ok,
                            f"{agree}/{len(rows)} triples agree ({seconds:.1f}s incl. bisection)"))
    assert ok


def test_criterion_2_filter_soundness(fuzz_results):
    rows, _ = fuzz_results
    bad_yes = sum(r["greedy"] is FilterVerdict.CERTIFIED_YES and not r["standard"] for r in rows)
    bad_no = sum(any(v is FilterVerdict.CERTIFIED_NO for v in r["negative"]) and r["standard"] for r in rows)
    yes = sum(r["greedy"] is FilterVerdict.CERTIFIED_YES for r in rows)
    no = sum(any(v is FilterVerdict.CERTIFIED_NO for v in r["negative"]) for r in rows)
    ok = bad_yes == 0 and bad_no == 0
    print(record_acceptance(2, "filter soundness", ok,
                            f"greedy {yes} certified / {bad_yes} wrong; negative {no} certified / "
                            f"{bad_no} wrong, over {len(rows)} triples"))
    assert ok


@pytest.fixture(scope="module")
def end_to_end():
    t0 = time.perf_counter()
    db = generate_synthetic(2017, 1000, "clustered-paths")
    engine = Engine(db)
    rng = np.random.default_rng(17)
    queries = []
    for k in BENCH_KS * 50:
        q = None
        while q is None:
            q = generate_query(engine, k, rng)
        queries.append((k, q))
    return db, engine, queries, t0


def test_criterion_3_end_to_end(end_to_end):
    db, engine, queries, t0 = end_to_end
    equal = 0
    exact_k = 0
    for k, q in queries:
        got = engine.query(q.curve, q.delta).matches
        want = naive_scan(db, q.curve, q.delta)
        equal += got == want
        exact_k += len(got) == k
    seconds = time.perf_counter() - t0
    ok = equal == len(queries) == 200 and exact_k == 200
    print(record_acceptance(3, "pipeline = naive scan", ok,
                            f"{equal}/{len(queries)} result sets equal, {exact_k} with exactly k "
                            f"({seconds:.1f}s)"))
    assert ok


def test_criterion_4_index_exactness(end_to_end):
    db, engine, queries, _ = end_to_end
    rng = np.random.default_rng(4)
    entries = [(c.summary, c.id) for c in db]
    index = SpatialIndex(entries)
    pts = index.points
    exact = 0
    for _ in range(100):
        base = pts[rng.integers(len(pts))]
        q = tuple(base + rng.normal(scale=200.0, size=8))
        delta = float(rng.uniform(0, 1500))
        got = sorted(index.candidates(q, delta))
        want = sorted(i for s, i in entries if lb_frechet(q, s) <= delta)
        exact += got == want
    missed = 0
    for _, q in queries:
        cand = set(engine.index.candidates(q.curve.summary, q.delta))
        missed += len(set(naive_scan(db, q.curve, q.delta)) - cand)
    ok = exact == 100 and missed == 0
    print(record_acceptance(4, "index exactness", ok,
                            f"{exact}/100 candidate sets equal the linear scan; "
                            f"{missed} true answers missing from candidates over {len(queries)} queries"))
    assert ok


def test_criterion_5_tent_distance():
    errs = {}
    for h in (0.1, 0.3, 1.0):
        seg, tent = tent_pair(h)
        errs[h] = abs(estimate_distance(seg, tent) - h) / h
    ok = all(e <= 1e-6 for e in errs.values())
    detail = ", ".join(f"h={h}: rel err {e:.1e}" for h, e in errs.items())
    print(record_acceptance(5, "tent distance by bisection", ok, detail))
    assert ok


@pytest.fixture(scope="module")
def bench_report():
    db = generate_synthetic(6, BENCH_SIZE, "clustered-paths")
    engine = Engine(db)
    t0 = time.perf_counter()
    report = run_bench(engine, BENCH_KS, BENCH_PER_K, seed=6)
    return db, report, time.perf_counter() - t0


def test_criterion_6_bench_fidelity(bench_report):
    db, report, seconds = bench_report
    counts = [len(c) for c in db]
    sizes_ok = len(db) == BENCH_SIZE and min(counts) >= MIN_VERTICES and max(counts) <= MAX_VERTICES
    exact_k = all(r["count"] == r["k"] for r in report.records)
    per_k = {row.k: row.queries for row in report.rows}
    fields_ok = all(
        set(row.phases) == set(PHASES) and set(row.ablations) == set(ABLATIONS)
        and all(len(v) == 2 and all(math.isfinite(x) for x in v) for v in row.phases.values())
        and all(len(v) == 2 and all(math.isfinite(x) for x in v) for v in row.ablations.values())
        and len(row.false_positives) == 2
        for row in report.rows)
    table = report.table()
    labels_ok = all(s in table for s in ("time for index", "time for greedy filter",
                                         "time for negative filter", "time for exact decider",
                                         "total with standard decider", "false positives"))
    ok = sizes_ok and exact_k and per_k == {k: BENCH_PER_K for k in BENCH_KS} and fields_ok and labels_ok
    print(record_acceptance(6, "benchmark harness fidelity", ok,
                            f"{len(report.records)} queries over k={list(BENCH_KS)} each returned exactly k; "
                            f"vertex counts {min(counts)}..{max(counts)}; all report fields present "
                            f"({seconds:.1f}s)"))
    print(table)
    assert ok


def test_criterion_7_ablation_direction(bench_report):
    _, report, _ = bench_report
    row = next(r for r in report.rows if r.k == 100)
    full = row.phases["total"][0]
    standard = row.ablations["standard_exact"][0]
    direction = standard >= full
    # set equality of every ablation is asserted inside run_bench for every query
    print(record_acceptance(7, "standard-decider ablation >= full pipeline at k=100", direction,
                            f"full {full:.3f} ms, with standard decider {standard:.3f} ms, "
                            f"ratio {standard / full:.2f}x; ablation result sets identical",
                            soft=True))


def test_criterion_8_complexity_guard(fuzz_results):
    rows, _ = fuzz_results
    ratios = [r["work"] / complexity_bound(r["n"], r["m"], 1.0) for r in rows]
    worst = max(ratios)
    ok = worst <= COMPLEXITY_CONSTANT
    print(record_acceptance(8, "recursion step guard", ok,
                            f"max work / (nm log2 nm) = {worst:.3f} <= c = {COMPLEXITY_CONSTANT:g} "
                            f"over {len(rows)} runs"))
    assert ok
